#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace aniso {

/// Centered frequency layout of an H x W grid. Horizontal frequency xi1 runs
/// over {-floor(W/2), ..., ceil(W/2) - 1}, likewise xi2 over the rows, both in
/// cycles per image. Storage is row-major with xi2 as the row.
class FrequencyLayout {
 public:
  FrequencyLayout(int width, int height) : width_(width), height_(height) {
    detail::require(width > 0 && height > 0, "frequency layout needs positive dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return static_cast<std::size_t>(width_) * height_; }

  int xi1_min() const { return -(width_ / 2); }
  int xi1_max() const { return width_ - width_ / 2 - 1; }
  int xi2_min() const { return -(height_ / 2); }
  int xi2_max() const { return height_ - height_ / 2 - 1; }

  bool contains(int xi1, int xi2) const {
    return xi1 >= xi1_min() && xi1 <= xi1_max() && xi2 >= xi2_min() && xi2 <= xi2_max();
  }

  std::size_t index(int xi1, int xi2) const {
    return static_cast<std::size_t>(xi2 - xi2_min()) * width_ + (xi1 - xi1_min());
  }

  int xi1_of(std::size_t index) const {
    return static_cast<int>(index % static_cast<std::size_t>(width_)) + xi1_min();
  }
  int xi2_of(std::size_t index) const {
    return static_cast<int>(index / static_cast<std::size_t>(width_)) + xi2_min();
  }

  /// Radius of the Nyquist disk in frequency bins.
  double nyquist_radius() const { return 0.5 * (width_ < height_ ? width_ : height_); }

  friend bool operator==(const FrequencyLayout&, const FrequencyLayout&) = default;

 private:
  int width_;
  int height_;
};

/// Complex DFT coefficients in centered layout.
struct Spectrum {
  FrequencyLayout layout;
  std::vector<std::complex<double>> bins;

  const std::complex<double>& at(int xi1, int xi2) const { return bins[layout.index(xi1, xi2)]; }
};

/// Power spectral density in centered layout; every bin is nonnegative.
struct Psd {
  FrequencyLayout layout;
  std::vector<double> bins;

  double at(int xi1, int xi2) const { return bins[layout.index(xi1, xi2)]; }

  double total() const {
    double s = 0.0;
    for (double v : bins) s += v;
    return s;
  }
};

}  // namespace aniso
