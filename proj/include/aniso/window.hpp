#pragma once

#include <cmath>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "image.hpp"

namespace aniso {

enum class WindowKind { None, DiskHann };

struct WindowSpec {
  WindowKind kind = WindowKind::DiskHann;
  // Support radius as a fraction of min(width, height) / 2.
  double radius = 1.0;
};

/// Radial Hann profile: 0.5 (1 + cos(pi r / R)) inside the disk, 0 outside.
inline double disk_hann(double r, double support) {
  if (r > support) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * r / support));
}

inline double window_support(int width, int height, const WindowSpec& spec) {
  return spec.radius * 0.5 * (width < height ? width : height);
}

inline Image apply_window(const Image& image, const WindowSpec& spec) {
  if (spec.kind == WindowKind::None) return image;
  detail::require(spec.radius > 0.0, "window radius fraction must be positive");
  const double support = window_support(image.width(), image.height(), spec);
  const double cx = image.center_x();
  const double cy = image.center_y();
  return Image::generate(image.width(), image.height(), [&](int x, int y) {
    const double r = std::hypot(x - cx, y - cy);
    return image(x, y) * disk_hann(r, support);
  });
}

}  // namespace aniso
