#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "filterbank.hpp"
#include "image.hpp"
#include "profile.hpp"
#include "random.hpp"
#include "registration.hpp"
#include "rotate.hpp"
#include "window.hpp"

namespace aniso {

struct MetricReport {
  std::string method;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
  std::string params;
  int failures = 0;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  int count = 0;
};

inline Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= s.count;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / s.count);
  return s;
}

/// Angular distance in [0, period / 2] on a circle of period 180 or 360.
inline double angular_distance(double a, double b, double period) {
  detail::require(period == 180.0 || period == 360.0, "angular period must be 180 or 360");
  return circular_distance(a, b, period);
}

inline constexpr double kMseFloor = 1e-30;  // caps the dB score at 300

namespace detail {

inline void require_normalized(const AngularProfile& p, const char* which) {
  require(std::abs(p.sum() - 1.0) <= 1e-9, std::string(which) + " profile is not normalized");
}

}  // namespace detail

/// -10 log10 of the mean squared difference between two normalized profiles
/// (higher is closer).
inline double profile_distance_db(const AngularProfile& estimated, const AngularProfile& reference) {
  detail::require(estimated.size() == reference.size(), "profiles have different lengths");
  detail::require_normalized(estimated, "estimated");
  detail::require_normalized(reference, "reference");
  double mse = 0.0;
  for (int m = 0; m < estimated.size(); ++m) {
    const double d = estimated.values[m] - reference.values[m];
    mse += d * d;
  }
  mse /= estimated.size();
  return -10.0 * std::log10(mse < kMseFloor ? kMseFloor : mse);
}

/// Largest absolute difference between two profiles of equal length.
inline double max_abs_difference(const AngularProfile& a, const AngularProfile& b) {
  detail::require(a.size() == b.size(), "profiles have different lengths");
  double worst = 0.0;
  for (int m = 0; m < a.size(); ++m) worst = std::max(worst, std::abs(a.values[m] - b.values[m]));
  return worst;
}

/// Normalized doubled-angle von Mises density exp(sigma cos(2 (theta - mu)))
/// sampled on the M-grid.
inline AngularProfile von_mises_reference_profile(double mu_deg, double sigma, int angle_count) {
  detail::require(sigma >= 0.0, "von Mises concentration must be >= 0");
  detail::require(angle_count >= 1, "profile needs at least one angle");
  AngularProfile out{std::vector<double>(static_cast<std::size_t>(angle_count)), true};
  double total = 0.0;
  for (int m = 0; m < angle_count; ++m) {
    const double theta = m * 180.0 / angle_count;
    // Offset by -sigma so large concentrations cannot overflow.
    out.values[m] = std::exp(sigma * (std::cos(deg_to_rad(2.0 * (theta - mu_deg))) - 1.0));
    total += out.values[m];
  }
  for (double& v : out.values) v /= total;
  return out;
}

/// Rotation angles for equivariance trials: one uniform draw in each of
/// `trials` equal strata of [0, period).
inline std::vector<double> stratified_angles(int trials, Rng& rng, double period = 180.0) {
  detail::require(trials >= 1, "at least one trial is required");
  std::vector<double> out(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) out[k] = (k + uniform01(rng)) * period / trials;
  return out;
}

struct EquivarianceTrial {
  double alpha = 0.0;
  double score_db = 0.0;
  double max_abs_error = 0.0;
};

/// For each alpha and bank, compares the normalized profile of the rotated
/// image with the normalized profile of the original shifted by alpha.
/// Result is indexed [bank][trial]. The rotated periodogram is shared across
/// banks.
inline std::vector<std::vector<EquivarianceTrial>> profile_equivariance_trials(
    const Image& image, std::span<const FilterBank* const> banks, const WindowSpec& window,
    std::span<const double> alphas) {
  std::vector<std::vector<EquivarianceTrial>> out(banks.size());
  const Psd base_psd = periodogram(image, window);
  std::vector<AngularProfile> base;
  for (const auto* bank : banks) base.push_back(normalize(angular_profile(base_psd, *bank)));
  for (double alpha : alphas) {
    const Psd psd = periodogram(rotate_bilinear(image, alpha), window);
    for (std::size_t b = 0; b < banks.size(); ++b) {
      const auto rotated = normalize(angular_profile(psd, *banks[b]));
      const auto expected = circular_shift_profile(base[b], alpha);
      out[b].push_back({alpha, profile_distance_db(rotated, expected),
                        max_abs_difference(rotated, expected)});
    }
  }
  return out;
}

inline MetricReport profile_equivariance_error(const Image& image, const FilterBank& bank,
                                               const WindowSpec& window, int trials, Rng& rng) {
  const auto alphas = stratified_angles(trials, rng);
  const FilterBank* banks[] = {&bank};
  const auto res = profile_equivariance_trials(image, banks, window, alphas);
  std::vector<double> scores;
  for (const auto& t : res[0]) scores.push_back(t.score_db);
  const auto s = summarize(scores);
  return {std::string(method_name(bank.method())), "profile_equivariance_db", s.mean, s.stddev,
          s.count, "trials=" + std::to_string(trials)};
}

/// Mean angular distance (period 360) between register(R_a x1, R_a x2) and
/// register(x1, x2) over the given rotations. Failed registrations are
/// counted in `failures` and excluded from the statistics.
inline MetricReport registration_equivariance_error(const Image& x1, const Image& x2,
                                                    const FilterBank& bank,
                                                    const WindowSpec& window,
                                                    std::span<const double> alphas,
                                                    bool refine = true) {
  MetricReport report{std::string(method_name(bank.method())), "registration_equivariance_deg"};
  report.params = "trials=" + std::to_string(alphas.size());
  const double gamma0 = register_images(x1, x2, bank, window, refine).gamma;
  std::vector<double> errors;
  for (double alpha : alphas) {
    try {
      const auto r = register_images(rotate_bilinear(x1, alpha), rotate_bilinear(x2, alpha), bank,
                                     window, refine);
      errors.push_back(angular_distance(r.gamma, gamma0, 360.0));
    } catch (const DegenerateProfileError&) {
      ++report.failures;
    }
  }
  const auto s = summarize(errors);
  report.mean = s.mean;
  report.stddev = s.stddev;
  report.count = s.count;
  return report;
}

inline MetricReport registration_equivariance_error(const Image& x1, const Image& x2,
                                                    const FilterBank& bank,
                                                    const WindowSpec& window, int trials,
                                                    Rng& rng, bool refine = true) {
  const auto alphas = stratified_angles(trials, rng);
  return registration_equivariance_error(x1, x2, bank, window, alphas, refine);
}

}  // namespace aniso
