#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace aniso {

/// Real-valued grayscale image, row-major. Always at least 8x8 with finite
/// samples; the constructor enforces both.
class Image {
 public:
  static constexpr int kMinSize = 8;

  Image(int width, int height, std::vector<double> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    detail::require(width_ >= kMinSize && height_ >= kMinSize,
                    "image must be at least 8x8, got " + std::to_string(width_) +
                        "x" + std::to_string(height_));
    detail::require(samples_.size() == static_cast<std::size_t>(width_) * height_,
                    "sample count does not match image dimensions");
    for (double v : samples_) {
      detail::require(std::isfinite(v), "image samples must be finite");
    }
  }

  static Image filled(int width, int height, double value) {
    return Image(width, height,
                 std::vector<double>(static_cast<std::size_t>(width > 0 ? width : 0) *
                                         (height > 0 ? height : 0),
                                     value));
  }

  /// Builds an image from f(x, y), x the column and y the row.
  template <class F>
  static Image generate(int width, int height, F&& f) {
    detail::require(width >= kMinSize && height >= kMinSize, "image must be at least 8x8");
    std::vector<double> s(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) s[static_cast<std::size_t>(y) * width + x] = f(x, y);
    return Image(width, height, std::move(s));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }

  double operator()(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const double> samples() const { return samples_; }

  /// Geometric center of the pixel grid, shared by rotation and windowing.
  double center_x() const { return 0.5 * (width_ - 1); }
  double center_y() const { return 0.5 * (height_ - 1); }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> samples_;
};

}  // namespace aniso
