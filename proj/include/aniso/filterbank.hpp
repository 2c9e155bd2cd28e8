#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "frequency.hpp"

namespace aniso {

enum class Method { CakeWavelet, Ridge, Binning };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::CakeWavelet: return "cake";
    case Method::Ridge: return "ridge";
    case Method::Binning: return "binning";
  }
  return "unknown";
}

inline Method parse_method(std::string_view name) {
  if (name == "cake") return Method::CakeWavelet;
  if (name == "ridge") return Method::Ridge;
  if (name == "binning") return Method::Binning;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

struct CakeParams {
  double exponent = 2.0;         // p in cos^p
  double half_width_deg = 30.0;  // angular support half-width of each wedge
  double r_lo = 0.02;     // radial band, fraction of the Nyquist radius
  double r_hi = 1.0;
};

struct RidgeParams {
  double sigma = 1.5;  // perpendicular bandwidth in frequency bins
  double r_lo = 0.02;
  double r_hi = 1.0;
  // Weights beyond this many sigmas from the line (< 3e-18) are not stored.
  double truncation = 9.0;
};

namespace detail {

// Folded angle of a nonzero frequency, split as quadrant * 90 + phi with
// quadrant in {0, 1} and phi in [0, 90). The split makes every bank exactly
// covariant under 90 degree grid rotations: rotating xi by 90 degrees flips
// the quadrant and leaves phi bit-identical.
struct FoldedAngle {
  int quadrant;
  double phi;

  double degrees() const { return quadrant * 90.0 + phi; }
};

inline FoldedAngle fold_frequency(int xi1, int xi2) {
  // Canonical representative of {xi, -xi} in the upper half-plane.
  if (xi2 < 0 || (xi2 == 0 && xi1 < 0)) {
    xi1 = -xi1;
    xi2 = -xi2;
  }
  if (xi1 > 0) return {0, rad_to_deg(std::atan2(static_cast<double>(xi2), xi1))};
  return {1, rad_to_deg(std::atan2(static_cast<double>(-xi1), xi2))};
}

inline FoldedAngle fold_grid_angle(int m, int count) {
  const int q = 2 * m >= count ? 1 : 0;
  return {q, static_cast<double>(2 * m - q * count) * 90.0 / count};
}

// Distance in [0, 90] between two folded angles on the 180 degree circle.
inline double folded_distance(const FoldedAngle& a, const FoldedAngle& b) {
  const double x = std::abs(a.phi - b.phi);
  return ((a.quadrant + b.quadrant) % 2 == 0) ? x : 90.0 - x;
}

}  // namespace detail

/// M nonnegative spectral weight masks over a centered frequency grid, one
/// per analysis angle m * 180 / M. Stored sparsely per frequency.
class FilterBank {
 public:
  struct Entry {
    int angle_index;
    double weight;
  };

  FilterBank(Method method, FrequencyLayout layout, int angle_count,
             std::vector<std::size_t> offsets, std::vector<Entry> entries)
      : method_(method),
        layout_(layout),
        angle_count_(angle_count),
        offsets_(std::move(offsets)),
        entries_(std::move(entries)) {}

  Method method() const { return method_; }
  const FrequencyLayout& layout() const { return layout_; }
  int angle_count() const { return angle_count_; }
  double angle_step() const { return 180.0 / angle_count_; }
  double angle(int m) const { return m * 180.0 / angle_count_; }

  /// Nonzero mask entries at the frequency with the given layout index.
  std::span<const Entry> entries_at(std::size_t freq_index) const {
    return {entries_.data() + offsets_[freq_index],
            entries_.data() + offsets_[freq_index + 1]};
  }

  double value(int m, int xi1, int xi2) const {
    for (const auto& e : entries_at(layout_.index(xi1, xi2)))
      if (e.angle_index == m) return e.weight;
    return 0.0;
  }

  /// Dense mask for angle index m in the centered layout.
  std::vector<double> mask(int m) const {
    std::vector<double> out(layout_.size(), 0.0);
    for (std::size_t i = 0; i < layout_.size(); ++i)
      for (const auto& e : entries_at(i))
        if (e.angle_index == m) out[i] = e.weight;
    return out;
  }

  std::size_t stored_entries() const { return entries_.size(); }

 private:
  Method method_;
  FrequencyLayout layout_;
  int angle_count_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

namespace detail {

inline void check_bank_args(int height, int width, int angle_count) {
  require(width > 0 && height > 0, "filter bank needs positive grid dimensions");
  require(angle_count >= 4, "filter bank needs at least 4 angles, got " +
                                std::to_string(angle_count));
}

inline void check_band(double r_lo, double r_hi) {
  require(r_lo >= 0.0 && r_lo < r_hi && r_hi <= 1.0,
          "radial band must satisfy 0 <= r_lo < r_hi <= 1");
}

// Visits every angle index whose grid angle may lie within `reach_deg` of the
// folded angle `a`, in an order that depends only on (quadrant, phi) relative
// to the grid, so 90-degree-rotated frequencies see the same sequence shifted.
template <class F>
void for_each_nearby_angle(const FoldedAngle& a, int count, double reach_deg, F&& visit) {
  const double step = 180.0 / count;
  const int k = static_cast<int>(std::ceil(reach_deg / step)) + 2;
  if (2 * k + 1 >= count) {
    for (int m = 0; m < count; ++m) visit(m);
    return;
  }
  const int center = (a.quadrant * count) / 2 + static_cast<int>(std::lround(a.phi / step));
  for (int off = -k; off <= k; ++off) visit(((center + off) % count + count) % count);
}

template <class Weights>
FilterBank build_bank(Method method, int height, int width, int angle_count, Weights&& weights) {
  FrequencyLayout layout(width, height);
  std::vector<std::size_t> offsets;
  offsets.reserve(layout.size() + 1);
  std::vector<FilterBank::Entry> entries;
  std::vector<FilterBank::Entry> scratch;
  offsets.push_back(0);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const int xi1 = layout.xi1_of(i);
    const int xi2 = layout.xi2_of(i);
    scratch.clear();
    if (xi1 != 0 || xi2 != 0) weights(xi1, xi2, scratch);
    for (const auto& e : scratch)
      if (e.weight > 0.0) entries.push_back(e);
    offsets.push_back(entries.size());
  }
  return FilterBank(method, layout, angle_count, std::move(offsets), std::move(entries));
}

}  // namespace detail

/// Cake wavelet wedges: cos^p angular windows of fixed half-width centred on
/// each grid angle, on a radial annulus, renormalized to a partition of unity
/// per frequency. The half-width must exceed half a grid step so that every
/// direction is covered.
inline FilterBank make_cake_bank(int height, int width, int angle_count,
                                 const CakeParams& params = {}) {
  detail::check_bank_args(height, width, angle_count);
  detail::require(params.exponent >= 1.0, "cake exponent must be >= 1");
  detail::require(params.half_width_deg > 90.0 / angle_count && params.half_width_deg <= 90.0,
                  "cake half-width must be in (90 / M, 90] degrees");
  detail::check_band(params.r_lo, params.r_hi);

  const FrequencyLayout layout(width, height);
  const double r_min = params.r_lo * layout.nyquist_radius();
  const double r_max = params.r_hi * layout.nyquist_radius();
  const double half_width = params.half_width_deg;

  bool any = false;
  FilterBank bank = detail::build_bank(
      Method::CakeWavelet, height, width, angle_count,
      [&](int xi1, int xi2, std::vector<FilterBank::Entry>& out) {
        const double r = std::sqrt(static_cast<double>(xi1 * xi1 + xi2 * xi2));
        if (r < r_min || r > r_max) return;
        const auto a = detail::fold_frequency(xi1, xi2);
        double total = 0.0;
        detail::for_each_nearby_angle(a, angle_count, half_width, [&](int m) {
          const double d = detail::folded_distance(a, detail::fold_grid_angle(m, angle_count));
          if (d >= half_width) return;
          const double w = std::pow(std::cos(kPi * d / (2.0 * half_width)), params.exponent);
          if (w <= 0.0) return;
          out.push_back({m, w});
          total += w;
        });
        if (total <= 0.0) {
          out.clear();
          return;
        }
        for (auto& e : out) e.weight /= total;
        any = true;
      });
  detail::require(any, "cake bank radial band contains no frequencies");
  return bank;
}

/// Ridge filters: Gaussian in the perpendicular distance to the line through
/// the origin at each angle, restricted to a radial annulus. Not normalized.
inline FilterBank make_ridge_bank(int height, int width, int angle_count,
                                  const RidgeParams& params = {}) {
  detail::check_bank_args(height, width, angle_count);
  detail::require(params.sigma > 0.0, "ridge sigma must be positive");
  detail::require(params.truncation > 0.0, "ridge truncation must be positive");
  detail::check_band(params.r_lo, params.r_hi);

  const FrequencyLayout layout(width, height);
  const double r_min = params.r_lo * layout.nyquist_radius();
  const double r_max = params.r_hi * layout.nyquist_radius();
  const double cutoff = params.truncation * params.sigma;
  const double inv_two_var = 1.0 / (2.0 * params.sigma * params.sigma);

  bool any = false;
  FilterBank bank = detail::build_bank(
      Method::Ridge, height, width, angle_count,
      [&](int xi1, int xi2, std::vector<FilterBank::Entry>& out) {
        const double r = std::sqrt(static_cast<double>(xi1 * xi1 + xi2 * xi2));
        if (r < r_min || r > r_max) return;
        any = true;
        const auto a = detail::fold_frequency(xi1, xi2);
        const double reach = cutoff >= r ? 90.0 : rad_to_deg(std::asin(cutoff / r));
        detail::for_each_nearby_angle(a, angle_count, reach, [&](int m) {
          const double d = detail::folded_distance(a, detail::fold_grid_angle(m, angle_count));
          const double perp = r * std::sin(deg_to_rad(d));
          if (perp > cutoff) return;
          out.push_back({m, std::exp(-perp * perp * inv_two_var)});
        });
      });
  detail::require(any, "ridge bank radial band contains no frequencies");
  return bank;
}

/// Angular binning: each nonzero frequency goes to the nearest grid angle
/// (ties to the smaller index), giving binary masks that partition the grid.
inline FilterBank make_binning_bank(int height, int width, int angle_count) {
  detail::check_bank_args(height, width, angle_count);
  return detail::build_bank(
      Method::Binning, height, width, angle_count,
      [&](int xi1, int xi2, std::vector<FilterBank::Entry>& out) {
        const auto a = detail::fold_frequency(xi1, xi2);
        int best = -1;
        double best_d = 0.0;
        detail::for_each_nearby_angle(a, angle_count, 0.0, [&](int m) {
          const double d = detail::folded_distance(a, detail::fold_grid_angle(m, angle_count));
          if (best < 0 || d < best_d || (d == best_d && m < best)) {
            best = m;
            best_d = d;
          }
        });
        out.push_back({best, 1.0});
      });
}

inline FilterBank make_bank(Method method, int height, int width, int angle_count,
                            const CakeParams& cake = {}, const RidgeParams& ridge = {}) {
  switch (method) {
    case Method::CakeWavelet: return make_cake_bank(height, width, angle_count, cake);
    case Method::Ridge: return make_ridge_bank(height, width, angle_count, ridge);
    case Method::Binning: return make_binning_bank(height, width, angle_count);
  }
  throw ValidationError("unknown method");
}

}  // namespace aniso
