#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "filterbank.hpp"
#include "image.hpp"
#include "profile.hpp"
#include "rotate.hpp"
#include "window.hpp"

namespace aniso {

struct RegistrationResult {
  double gamma = 0.0;  // degrees in [0, 360); x2 is approximately x1 rotated by gamma
  double candidate1 = 0.0;
  double candidate2 = 0.0;
  double mse1 = 0.0;
  double mse2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::vector<std::string> warnings;
};

// Profiles flatter than this peak-to-mean ratio give unreliable orientations.
inline constexpr double kNearIsotropicRatio = 1.05;
// Fraction of min(H, W) / 2 over which the disambiguation error is measured.
inline constexpr double kMseDiskFraction = 0.9;

/// Mean squared difference between x1 and x2 rotated back by gamma, over the
/// central disk of radius 0.9 * min(H, W) / 2 (excludes rotation fill-in).
inline double masked_mse(const Image& x1, const Image& x2, double gamma_deg) {
  detail::require(x1.same_shape(x2), "images must have the same dimensions");
  const Image back = detail::rotate_unchecked(x2, wrap(-gamma_deg, 360.0));
  const double radius = kMseDiskFraction * 0.5 * std::min(x1.width(), x1.height());
  const double cx = x1.center_x();
  const double cy = x1.center_y();
  double sum = 0.0;
  long count = 0;
  for (int y = 0; y < x1.height(); ++y) {
    for (int x = 0; x < x1.width(); ++x) {
      if (std::hypot(x - cx, y - cy) > radius) continue;
      const double d = x1(x, y) - back(x, y);
      sum += d * d;
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

/// Estimates the rotation gamma with x2 ~ rotate_bilinear(x1, gamma) from
/// the principal orientations of both images, resolving the 180 degree
/// ambiguity by the smaller masked_mse.
inline RegistrationResult register_images(const Image& x1, const Image& x2, const FilterBank& bank,
                                          const WindowSpec& window = {}, bool refine = true) {
  detail::require(x1.same_shape(x2), "images must have the same dimensions");
  const auto p1 = analyze(x1, bank, window);
  const auto p2 = analyze(x2, bank, window);
  RegistrationResult out;
  const auto e1 = principal_orientation(p1, refine);
  const auto e2 = principal_orientation(p2, refine);
  out.theta1 = e1.eta;
  out.theta2 = e2.eta;
  for (const auto* p : {&p1, &p2}) {
    if (peak_to_mean(*p) < kNearIsotropicRatio) {
      out.warnings.push_back(std::string("near-isotropic profile for image ") +
                             (p == &p1 ? "1" : "2") + "; orientation is unreliable");
    }
  }
  out.candidate1 = wrap(out.theta2 - out.theta1, 360.0);
  out.candidate2 = wrap(out.candidate1 + 180.0, 360.0);
  out.mse1 = masked_mse(x1, x2, out.candidate1);
  out.mse2 = masked_mse(x1, x2, out.candidate2);
  out.gamma = out.mse2 < out.mse1 ? out.candidate2 : out.candidate1;
  return out;
}

inline RegistrationResult register_images(const Image& x1, const Image& x2, Method method,
                                          const WindowSpec& window = {}, int angle_count = 180,
                                          const CakeParams& cake = {}, const RidgeParams& ridge = {},
                                          bool refine = true) {
  detail::require(x1.same_shape(x2), "images must have the same dimensions");
  const auto bank = make_bank(method, x1.height(), x1.width(), angle_count, cake, ridge);
  return register_images(x1, x2, bank, window, refine);
}

}  // namespace aniso
