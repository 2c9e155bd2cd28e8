#pragma once

#include <complex>
#include <vector>

#include "fft.hpp"
#include "frequency.hpp"
#include "image.hpp"
#include "window.hpp"

namespace aniso {

enum class DcBin { Zeroed, Retained };

/// Windowed periodogram S(xi) = |X(xi)|^2. The DC bin is zeroed by default
/// since the mean carries no direction.
inline Psd periodogram(const Image& image, const WindowSpec& window, DcBin dc = DcBin::Zeroed) {
  const Spectrum spec = dft2(apply_window(image, window));
  Psd psd{spec.layout, std::vector<double>(spec.bins.size())};
  for (std::size_t i = 0; i < spec.bins.size(); ++i) psd.bins[i] = std::norm(spec.bins[i]);
  if (dc == DcBin::Zeroed) psd.bins[psd.layout.index(0, 0)] = 0.0;
  return psd;
}

}  // namespace aniso
