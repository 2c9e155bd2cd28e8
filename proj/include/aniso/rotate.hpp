#pragma once

#include <cmath>
#include <string>

#include "angles.hpp"
#include "error.hpp"
#include "image.hpp"

namespace aniso {

namespace detail {

// Tolerance for sample positions that land on the domain border up to
// rounding in the rotation matrix.
inline constexpr double kBorderEps = 1e-9;

inline double sample_bilinear(const Image& img, double sx, double sy) {
  const double w = img.width();
  const double h = img.height();
  if (sx < -kBorderEps || sy < -kBorderEps || sx > w - 1 + kBorderEps ||
      sy > h - 1 + kBorderEps) {
    return 0.0;
  }
  const double fx = std::floor(sx);
  const double fy = std::floor(sy);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double tx = sx - fx;
  const double ty = sy - fy;
  auto px = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return 0.0;
    return img(x, y);
  };
  return (1.0 - ty) * ((1.0 - tx) * px(x0, y0) + tx * px(x0 + 1, y0)) +
         ty * ((1.0 - tx) * px(x0, y0 + 1) + tx * px(x0 + 1, y0 + 1));
}

inline Image rotate_unchecked(const Image& image, double angle_deg) {
  if (angle_deg == 0.0) return image;
  const auto [s, c] = sincos_deg(angle_deg);
  const double cx = image.center_x();
  const double cy = image.center_y();
  // Inverse map: source = R^-1 (u - center) + center.
  return Image::generate(image.width(), image.height(), [&](int x, int y) {
    const double dx = x - cx;
    const double dy = y - cy;
    return sample_bilinear(image, c * dx + s * dy + cx, -s * dx + c * dy + cy);
  });
}

}  // namespace detail

/// Rotates about the pixel-grid center by `angle_deg` in [0, 360). Positive
/// angles turn the x axis towards the y axis (rows grow downwards), so the
/// spectrum and angular profile rotate by the same angle. Pixels whose
/// pre-image leaves the input domain are 0.
inline Image rotate_bilinear(const Image& image, double angle_deg) {
  detail::require(angle_deg >= 0.0 && angle_deg < 360.0,
                  "rotation angle must be in [0, 360), got " + std::to_string(angle_deg));
  return detail::rotate_unchecked(image, angle_deg);
}

}  // namespace aniso
