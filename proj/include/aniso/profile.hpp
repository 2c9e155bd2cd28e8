#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "filterbank.hpp"
#include "frequency.hpp"
#include "image.hpp"
#include "periodogram.hpp"
#include "window.hpp"

namespace aniso {

/// Energy per analysis angle m * 180 / M, m = 0..M-1.
struct AngularProfile {
  std::vector<double> values;
  bool normalized = false;

  int size() const { return static_cast<int>(values.size()); }
  double step() const { return 180.0 / static_cast<double>(values.size()); }
  double angle(int m) const { return m * 180.0 / static_cast<double>(values.size()); }

  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

struct OrientationEstimate {
  double eta = 0.0;  // degrees in [0, 180)
  bool refined = false;
  double peak = 0.0;
  int index = 0;  // grid argmax
};

/// rho_m = sum over xi of mask_m(xi) * psd(xi), un-normalized.
inline AngularProfile angular_profile(const Psd& psd, const FilterBank& bank) {
  detail::require(psd.layout == bank.layout(), "PSD shape does not match filter bank shape");
  AngularProfile out{std::vector<double>(static_cast<std::size_t>(bank.angle_count()), 0.0), false};
  for (std::size_t i = 0; i < psd.bins.size(); ++i) {
    const double s = psd.bins[i];
    if (s == 0.0) continue;
    for (const auto& e : bank.entries_at(i)) out.values[e.angle_index] += e.weight * s;
  }
  return out;
}

/// Windowed periodogram followed by angular_profile. A constant image is
/// rejected up front: windowing it leaves only the window's own spectrum,
/// which says nothing about the image.
inline AngularProfile analyze(const Image& image, const FilterBank& bank,
                              const WindowSpec& window = {}) {
  const auto [lo, hi] = std::minmax_element(image.samples().begin(), image.samples().end());
  if (*lo == *hi) throw DegenerateProfileError("constant image has no directional content");
  return angular_profile(periodogram(image, window), bank);
}

inline AngularProfile normalize(const AngularProfile& profile) {
  double total = 0.0;
  for (double v : profile.values) {
    detail::require(std::isfinite(v) && v >= 0.0, "profile values must be finite and >= 0");
    total += v;
  }
  if (!(total > 0.0)) throw DegenerateProfileError("all-zero profile (empty or constant image?)");
  if (profile.normalized) return profile;
  AngularProfile out{profile.values, true};
  for (double& v : out.values) v /= total;
  return out;
}

/// Argmax of the profile (ties to the smallest index), optionally refined by
/// a three-point parabola through the circular neighbours.
inline OrientationEstimate principal_orientation(const AngularProfile& profile, bool refine = true) {
  const int n = profile.size();
  detail::require(n >= 3, "profile needs at least 3 angles");
  int best = 0;
  double total = 0.0;
  for (int m = 0; m < n; ++m) {
    total += profile.values[m];
    if (profile.values[m] > profile.values[best]) best = m;
  }
  if (!(total > 0.0)) throw DegenerateProfileError();

  OrientationEstimate est{profile.angle(best), refine, profile.values[best], best};
  if (refine) {
    const double prev = profile.values[(best + n - 1) % n];
    const double peak = profile.values[best];
    const double next = profile.values[(best + 1) % n];
    const double denom = prev - 2.0 * peak + next;
    double delta = 0.0;
    if (denom < -1e-12 * peak) delta = 0.5 * (prev - next) / denom;
    if (delta <= -0.5 || delta >= 0.5) delta = 0.0;  // unreachable at a strict argmax
    est.eta = wrap(profile.angle(best) + delta * profile.step(), 180.0);
  }
  return est;
}

/// Resamples the profile at theta_m - delta (mod 180) by circular linear
/// interpolation, i.e. rotates it by +delta.
inline AngularProfile circular_shift_profile(const AngularProfile& profile, double delta_deg) {
  const int n = profile.size();
  AngularProfile out{std::vector<double>(profile.values.size()), profile.normalized};
  const double shift = wrap(delta_deg, 180.0) / profile.step();
  double whole = std::floor(shift);
  double frac = shift - whole;
  // Snap on-grid shifts so they are exact index rotations.
  if (std::abs(shift - std::round(shift)) < 1e-9) {
    whole = std::round(shift);
    frac = 0.0;
  }
  const int k = static_cast<int>(whole);
  for (int m = 0; m < n; ++m) {
    // Position m - shift lies between indices m - k - 1 and m - k.
    const double hi = profile.values[((m - k) % n + n) % n];
    const double lo = profile.values[((m - k - 1) % n + n) % n];
    out.values[m] = frac == 0.0 ? hi : (1.0 - frac) * hi + frac * lo;
  }
  return out;
}

/// Peak-to-mean ratio; 1 for a flat profile.
inline double peak_to_mean(const AngularProfile& profile) {
  double peak = 0.0;
  for (double v : profile.values) peak = v > peak ? v : peak;
  const double mean = profile.sum() / profile.size();
  if (!(mean > 0.0)) throw DegenerateProfileError();
  return peak / mean;
}

}  // namespace aniso
