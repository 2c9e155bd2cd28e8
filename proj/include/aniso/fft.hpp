#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "frequency.hpp"
#include "image.hpp"

namespace aniso {

namespace detail {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct FftwPlanDestroy {
  void operator()(fftw_plan p) const {
    if (p != nullptr) fftw_destroy_plan(p);
  }
};

// The FFTW planner is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline FftwBuffer fftw_alloc(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

/// In-place unnormalized 2D DFT of a row-major height x width buffer.
/// sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
inline void fft2_inplace(fftw_complex* data, int width, int height, int sign) {
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, FftwPlanDestroy> plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan.reset(fftw_plan_dft_2d(height, width, data, data, sign, FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  std::lock_guard lock(fftw_planner_mutex());
  plan.reset();
}

inline int positive_mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace detail

/// Unnormalized forward 2D DFT, X(xi) = sum_u x(u) exp(-2 pi i <xi, u / n>),
/// reported in the centered frequency layout.
inline Spectrum dft2(const Image& image) {
  const int w = image.width();
  const int h = image.height();
  const std::size_t n = image.size();
  auto buf = detail::fftw_alloc(n);
  const auto samples = image.samples();
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = samples[i];
    buf[i][1] = 0.0;
  }
  detail::fft2_inplace(buf.get(), w, h, FFTW_FORWARD);

  Spectrum out{FrequencyLayout(w, h), std::vector<std::complex<double>>(n)};
  for (int xi2 = out.layout.xi2_min(); xi2 <= out.layout.xi2_max(); ++xi2) {
    const int row = detail::positive_mod(xi2, h);
    for (int xi1 = out.layout.xi1_min(); xi1 <= out.layout.xi1_max(); ++xi1) {
      const auto& c = buf[static_cast<std::size_t>(row) * w + detail::positive_mod(xi1, w)];
      out.bins[out.layout.index(xi1, xi2)] = {c[0], c[1]};
    }
  }
  return out;
}

/// Inverse of dft2 (normalized by 1/(H W)), returning the real part.
/// Callers are expected to pass conjugate-symmetric spectra.
inline std::vector<double> idft2_real(const Spectrum& spectrum) {
  const int w = spectrum.layout.width();
  const int h = spectrum.layout.height();
  const std::size_t n = spectrum.layout.size();
  auto buf = detail::fftw_alloc(n);
  for (int xi2 = spectrum.layout.xi2_min(); xi2 <= spectrum.layout.xi2_max(); ++xi2) {
    const int row = detail::positive_mod(xi2, h);
    for (int xi1 = spectrum.layout.xi1_min(); xi1 <= spectrum.layout.xi1_max(); ++xi1) {
      const auto& c = spectrum.at(xi1, xi2);
      auto& dst = buf[static_cast<std::size_t>(row) * w + detail::positive_mod(xi1, w)];
      dst[0] = c.real();
      dst[1] = c.imag();
    }
  }
  detail::fft2_inplace(buf.get(), w, h, FFTW_BACKWARD);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i][0] * scale;
  return out;
}

}  // namespace aniso
