#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "angles.hpp"
#include "error.hpp"

namespace aniso {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Derives an independent stream seed from a base seed and an index
/// (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Von Mises variate on (-pi, pi] with mean 0 and concentration kappa
/// (Best & Fisher rejection sampler). kappa = 0 is the uniform law.
inline double sample_von_mises(double kappa, Rng& rng) {
  detail::require(kappa >= 0.0, "von Mises concentration must be >= 0");
  if (kappa < 1e-8) return kPi * (2.0 * uniform01(rng) - 1.0);
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  while (true) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double u3 = uniform01(rng);
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0 || (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)) {
      const double psi = std::acos(std::clamp(f, -1.0, 1.0));
      return u3 < 0.5 ? -psi : psi;
    }
  }
}

/// Half-circle orientation in [0, 180) whose doubled angle is von Mises with
/// mode 2 * mu: the variate on (-pi, pi] is halved onto a 180 degree range
/// and recentered at mu.
inline double sample_von_mises_angle(double mu_deg, double sigma, Rng& rng) {
  const double psi = sample_von_mises(sigma, rng);
  return wrap(mu_deg + psi * 90.0 / kPi, 180.0);
}

}  // namespace aniso
