#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "error.hpp"
#include "fft.hpp"
#include "image.hpp"
#include "metrics.hpp"
#include "profile.hpp"
#include "random.hpp"
#include "window.hpp"

namespace aniso {

/// Known angular descriptor of a synthetic image.
struct GroundTruth {
  enum class Kind { Isotropic, SingleAngle, VonMises };
  Kind kind = Kind::Isotropic;
  double angle = 0.0;  // SingleAngle
  double mu = 0.0;     // VonMises
  double sigma = 0.0;  // VonMises concentration

  /// Normalized reference profile on an M-grid. A single angle puts all mass
  /// on the nearest grid angle.
  AngularProfile reference_profile(int angle_count) const {
    switch (kind) {
      case Kind::Isotropic:
        return {std::vector<double>(static_cast<std::size_t>(angle_count), 1.0 / angle_count),
                true};
      case Kind::SingleAngle: {
        AngularProfile p{std::vector<double>(static_cast<std::size_t>(angle_count), 0.0), true};
        const int m = static_cast<int>(std::lround(wrap(angle, 180.0) * angle_count / 180.0));
        p.values[m % angle_count] = 1.0;
        return p;
      }
      case Kind::VonMises: return von_mises_reference_profile(mu, sigma, angle_count);
    }
    return {};
  }

  /// Principal orientation implied by the ground truth, when there is one.
  double principal_angle() const { return kind == Kind::SingleAngle ? angle : mu; }
};

inline std::string kind_name(GroundTruth::Kind k) {
  switch (k) {
    case GroundTruth::Kind::Isotropic: return "isotropic";
    case GroundTruth::Kind::SingleAngle: return "single_angle";
    case GroundTruth::Kind::VonMises: return "von_mises";
  }
  return "unknown";
}

struct SyntheticImage {
  Image image;
  GroundTruth truth;
};

/// Shifts to zero mean and scales to unit max-abs.
inline Image standardize(const Image& image) {
  const auto s = image.samples();
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double peak = 0.0;
  for (double v : s) peak = std::max(peak, std::abs(v - mean));
  if (!(peak > 0.0)) throw ValidationError("cannot standardize a constant image");
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = (s[i] - mean) / peak;
  return Image(image.width(), image.height(), std::move(out));
}

/// h_theta(a, b) = exp(-a^2 - b^2) cos(a sin(theta) - b cos(theta)).
inline double gabor_h(double a, double b, double theta_deg) {
  const auto [s, c] = sincos_deg(theta_deg);
  return std::exp(-a * a - b * b) * std::cos(a * s - b * c);
}

namespace detail {

// exp(-49) is below double rounding of any sum of unit-scale atoms.
inline constexpr double kAtomSupport = 7.0;

inline void add_gabor_atom(std::vector<double>& acc, int width, int height, double theta_deg,
                           double s, double u, double v) {
  const auto [sn, cs] = sincos_deg(theta_deg);
  const double reach = kAtomSupport * s;
  const int x0 = std::max(0, static_cast<int>(std::floor(u - reach)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(u + reach)));
  const int y0 = std::max(0, static_cast<int>(std::floor(v - reach)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(v + reach)));
  for (int y = y0; y <= y1; ++y) {
    const double b = (y - v) / s;
    for (int x = x0; x <= x1; ++x) {
      const double a = (x - u) / s;
      acc[static_cast<std::size_t>(y) * width + x] +=
          std::exp(-a * a - b * b) * std::cos(a * sn - b * cs);
    }
  }
}

}  // namespace detail

/// g(a, b) = h_theta((a - u) / s, (b - v) / s) on the pixel grid, a the
/// column and b the row. The spectral power of h_theta lies along the
/// frequency direction theta + 90 degrees (folded to [0, 180)).
inline Image gabor_atom(double theta_deg, double s, double u, double v, int width, int height) {
  detail::require(s > 0.0, "Gabor atom scale must be positive");
  return Image::generate(width, height, [&](int x, int y) {
    return gabor_h((x - u) / s, (y - v) / s, theta_deg);
  });
}

/// Offset between the spectral orientation of an atom and its h_theta angle.
inline constexpr double kGaborSpectralOffset = 90.0;

struct GaborMixSpec {
  int atoms = 300;
  double mu = 60.0;     // degrees, spectral orientation mode
  double sigma = 50.0;  // von Mises concentration
  double scale_min = 4.0;
  double scale_max = 12.0;
  double position_fraction = 0.8;  // centers drawn over this central fraction
  int width = 256;
  int height = 256;
  std::uint64_t seed = 0;
};

/// Sum of `atoms` Gabor atoms whose spectral orientations are drawn from the
/// half-circle von Mises law around mu, with uniform scales and positions.
inline SyntheticImage gen_gabor_image(const GaborMixSpec& spec) {
  detail::require(spec.atoms >= 1, "Gabor mixture needs at least one atom");
  detail::require(spec.sigma >= 0.0, "von Mises concentration must be >= 0");
  detail::require(spec.scale_min > 0.0 && spec.scale_min <= spec.scale_max,
                  "Gabor scale interval must satisfy 0 < min <= max");
  detail::require(spec.position_fraction > 0.0 && spec.position_fraction <= 1.0,
                  "position fraction must be in (0, 1]");
  detail::require(spec.width >= Image::kMinSize && spec.height >= Image::kMinSize,
                  "image must be at least 8x8");
  Rng rng(spec.seed);
  std::vector<double> acc(static_cast<std::size_t>(spec.width) * spec.height, 0.0);
  const double margin_x = 0.5 * (1.0 - spec.position_fraction) * (spec.width - 1);
  const double margin_y = 0.5 * (1.0 - spec.position_fraction) * (spec.height - 1);
  for (int i = 0; i < spec.atoms; ++i) {
    const double theta = sample_von_mises_angle(spec.mu, spec.sigma, rng);
    const double s = uniform(rng, spec.scale_min, spec.scale_max);
    const double u = uniform(rng, margin_x, spec.width - 1 - margin_x);
    const double v = uniform(rng, margin_y, spec.height - 1 - margin_y);
    detail::add_gabor_atom(acc, spec.width, spec.height, theta + kGaborSpectralOffset, s, u, v);
  }
  GroundTruth truth{GroundTruth::Kind::VonMises, 0.0, spec.mu, spec.sigma};
  return {standardize(Image(spec.width, spec.height, std::move(acc))), truth};
}

/// Cosine grating whose spectral power lies along `angle_deg`.
inline SyntheticImage gen_oriented_oscillation(double angle_deg, double wavelength_px, int width,
                                               int height) {
  detail::require(wavelength_px >= 3.0, "wavelength must be at least 3 px");
  const auto [s, c] = sincos_deg(angle_deg);
  const double cx = 0.5 * (width - 1);
  const double cy = 0.5 * (height - 1);
  const Image raw = Image::generate(width, height, [&](int x, int y) {
    return std::cos(2.0 * kPi * ((x - cx) * c + (y - cy) * s) / wavelength_px);
  });
  return {standardize(raw), GroundTruth{GroundTruth::Kind::SingleAngle, wrap(angle_deg, 180.0)}};
}

struct NoiseBand {
  double lo = 0.1;    // fractions of the Nyquist radius
  double hi = 0.6;
  double edge = 0.05;  // width of the Hann roll-off on each side
};

/// Radial band-pass gain: 1 inside [lo, hi], Hann roll-off of width `edge`
/// outside it, 0 beyond.
inline double band_gain(double r, const NoiseBand& band) {
  if (r >= band.lo && r <= band.hi) return 1.0;
  const double d = r < band.lo ? band.lo - r : r - band.hi;
  if (band.edge <= 0.0 || d >= band.edge) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * d / band.edge));
}

/// White Gaussian noise filtered by a radially symmetric band-pass, then
/// standardized. The expected spectrum is isotropic.
inline Image gen_bandlimited_noise(int width, int height, const NoiseBand& band,
                                   std::uint64_t seed) {
  detail::require(band.lo >= 0.0 && band.lo <= band.hi, "noise band must satisfy lo <= hi");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> white(static_cast<std::size_t>(width) * height);
  for (double& v : white) v = normal(rng);
  Spectrum spec = dft2(Image(width, height, std::move(white)));
  const double rn = spec.layout.nyquist_radius();
  for (std::size_t i = 0; i < spec.bins.size(); ++i) {
    const double xi1 = spec.layout.xi1_of(i);
    const double xi2 = spec.layout.xi2_of(i);
    spec.bins[i] *= band_gain(std::hypot(xi1, xi2) / rn, band);
  }
  return standardize(Image(width, height, idft2_real(spec)));
}

inline SyntheticImage gen_isotropic(int width, int height, std::uint64_t seed,
                                    const NoiseBand& band = {}) {
  return {gen_bandlimited_noise(width, height, band, seed), GroundTruth{}};
}

}  // namespace aniso
