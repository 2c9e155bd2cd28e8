#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include <aniso/fft.hpp>
#include <aniso/image.hpp>
#include <aniso/periodogram.hpp>
#include <aniso/rotate.hpp>
#include <aniso/synthgen.hpp>
#include <aniso/window.hpp>

#include "oracles.hpp"

using namespace aniso;

namespace {

double sum_sq(const Image& img) {
  double s = 0.0;
  for (double v : img.samples()) s += v * v;
  return s;
}

}  // namespace

TEST(Image, RejectsSmallOrNonFinite) {
  EXPECT_THROW(Image::filled(7, 8, 0.0), ValidationError);
  EXPECT_THROW(Image::filled(8, 4, 0.0), ValidationError);
  std::vector<double> s(64, 0.0);
  s[5] = std::nan("");
  EXPECT_THROW(Image(8, 8, s), ValidationError);
  s[5] = INFINITY;
  EXPECT_THROW(Image(8, 8, s), ValidationError);
  EXPECT_THROW(Image(8, 8, std::vector<double>(63)), ValidationError);
  EXPECT_NO_THROW(Image::filled(8, 8, 1.0));
}

TEST(Window, NoneIsIdentity) {
  const Image img = oracle::random_image(17, 12, 3);
  EXPECT_EQ(apply_window(img, {WindowKind::None, 1.0}), img);
}

TEST(Window, OnesGiveWindowField) {
  const Image ones = Image::filled(65, 65, 1.0);
  const Image w = apply_window(ones, {});
  EXPECT_DOUBLE_EQ(w(32, 32), 1.0);
  EXPECT_EQ(w(0, 0), 0.0);
  EXPECT_EQ(w(64, 0), 0.0);
  EXPECT_EQ(w(0, 64), 0.0);
  EXPECT_EQ(w(64, 64), 0.0);
}

TEST(Window, SumMatchesClosedForm) {
  const Image ones = Image::filled(64, 64, 1.0);
  for (double fraction : {1.0, 0.7}) {
    const Image w = apply_window(ones, {WindowKind::DiskHann, fraction});
    double expected = 0.0;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) {
        const double v = oracle::disk_hann_at(x, y, 64, 64, fraction);
        expected += v;
        EXPECT_NEAR(w(x, y), v, 1e-15);
      }
    const auto s = w.samples();
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), expected, 1e-9 * expected);
  }
}

TEST(Window, ZeroOutsideDiskAndRadial) {
  const Image w = apply_window(Image::filled(40, 30, 1.0), {});
  const double big_r = 15.0;
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) {
      const double r = std::hypot(x - 19.5, y - 14.5);
      EXPECT_GE(w(x, y), 0.0);
      EXPECT_LE(w(x, y), 1.0);
      if (r > big_r) EXPECT_EQ(w(x, y), 0.0);
    }
  // Mirror pixels about the center share a radius.
  EXPECT_DOUBLE_EQ(w(10, 7), w(29, 22));
  EXPECT_DOUBLE_EQ(w(10, 7), w(29, 7));
}

TEST(Rotate, ZeroIsIdentity) {
  const Image img = oracle::random_image(20, 16, 4);
  EXPECT_EQ(rotate_bilinear(img, 0.0), img);
}

TEST(Rotate, QuarterTurnsMatchPermutation) {
  for (int n : {16, 17}) {
    const Image img = oracle::random_image(n, n, 5 + n);
    for (int turns = 1; turns <= 3; ++turns) {
      const Image got = rotate_bilinear(img, 90.0 * turns);
      const Image want = oracle::rotate_quarter_turns(img, turns);
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) ASSERT_NEAR(got(x, y), want(x, y), 1e-6) << turns;
    }
  }
}

TEST(Rotate, RoundTripOnBandLimitedNoise) {
  const Image img = gen_bandlimited_noise(128, 128, {}, 9);
  const Image back = rotate_bilinear(rotate_bilinear(img, 30.0), 330.0);
  const double radius = 0.6 * 64.0;
  double err = 0.0;
  int count = 0;
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      if (std::hypot(x - 63.5, y - 63.5) > radius) continue;
      err += std::abs(back(x, y) - img(x, y));
      ++count;
    }
  // Bilinear interpolation damps the upper part of the band on each pass.
  EXPECT_LT(err / count, 0.1);
}

TEST(Rotate, RejectsOutOfRange) {
  const Image img = Image::filled(8, 8, 1.0);
  EXPECT_THROW(rotate_bilinear(img, 360.0), ValidationError);
  EXPECT_THROW(rotate_bilinear(img, 370.0), ValidationError);
  EXPECT_THROW(rotate_bilinear(img, -1.0), ValidationError);
}

TEST(Rotate, OutsideIsZero) {
  const Image r = rotate_bilinear(Image::filled(32, 32, 1.0), 45.0);
  EXPECT_EQ(r(0, 0), 0.0);
  EXPECT_NEAR(r(16, 16), 1.0, 1e-12);
}

TEST(Dft, ConstantImage) {
  const Spectrum s = dft2(Image::filled(12, 10, 2.5));
  for (std::size_t i = 0; i < s.bins.size(); ++i) {
    if (i == s.layout.index(0, 0)) {
      EXPECT_NEAR(s.bins[i].real(), 2.5 * 120, 1e-9);
    } else {
      EXPECT_LT(std::abs(s.bins[i]), 1e-9);
    }
  }
}

TEST(Dft, ImpulseIsFlat) {
  std::vector<double> v(81, 0.0);
  v[0] = 1.0;
  const Spectrum s = dft2(Image(9, 9, v));
  for (const auto& c : s.bins) EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
}

TEST(Dft, CosineTwoBins) {
  const Image img = Image::generate(16, 16, [](int x, int) {
    return std::cos(2.0 * std::numbers::pi * 3.0 * x / 16.0);
  });
  const Spectrum s = dft2(img);
  const auto naive = oracle::naive_dft(img);
  for (std::size_t i = 0; i < s.bins.size(); ++i) {
    const int k1 = s.layout.xi1_of(i);
    const int k2 = s.layout.xi2_of(i);
    EXPECT_NEAR(std::abs(s.bins[i] - naive[i]), 0.0, 1e-9);
    if (k2 == 0 && (k1 == 3 || k1 == -3)) {
      EXPECT_NEAR(std::abs(s.bins[i]), 128.0, 1e-9);
    } else {
      EXPECT_LT(std::abs(s.bins[i]), 1e-9);
    }
  }
  const Psd p = periodogram(img, {WindowKind::None, 1.0});
  EXPECT_NEAR(p.at(3, 0), 16384.0, 1e-6);
  EXPECT_NEAR(p.at(-3, 0), 16384.0, 1e-6);
}

TEST(Dft, MatchesNaiveOnAllSmallSizes) {
  for (int h : {8, 9, 13, 16, 32}) {
    for (int w : {8, 11, 16, 25, 32}) {
      const Image img = oracle::random_image(w, h, static_cast<std::uint64_t>(100 * h + w));
      const Spectrum s = dft2(img);
      const auto naive = oracle::naive_dft(img);
      double scale = 0.0;
      for (const auto& c : naive) scale = std::max(scale, std::abs(c));
      for (std::size_t i = 0; i < naive.size(); ++i)
        ASSERT_LE(std::abs(s.bins[i] - naive[i]), 1e-6 * scale) << w << "x" << h;
    }
  }
}

TEST(Dft, ConjugateSymmetry) {
  for (int n : {16, 17}) {
    const Spectrum s = dft2(oracle::random_image(n, n + 3, 77));
    const auto& l = s.layout;
    double scale = 0.0;
    for (const auto& c : s.bins) scale = std::max(scale, std::abs(c));
    for (int k2 = l.xi2_min(); k2 <= l.xi2_max(); ++k2)
      for (int k1 = l.xi1_min(); k1 <= l.xi1_max(); ++k1) {
        if (!l.contains(-k1, -k2)) continue;
        EXPECT_LE(std::abs(s.at(-k1, -k2) - std::conj(s.at(k1, k2))), 1e-9 * scale);
      }
  }
}

TEST(Dft, InverseRoundTrip) {
  const Image img = oracle::random_image(24, 19, 8);
  const auto back = idft2_real(dft2(img));
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], img.samples()[i], 1e-12);
}

TEST(Periodogram, ConstantIsZeroAfterDcRemoval) {
  const Psd p = periodogram(Image::filled(16, 16, 3.0), {WindowKind::None, 1.0});
  for (double v : p.bins) EXPECT_LT(v, 1e-12);
}

TEST(Periodogram, Parseval) {
  for (int n : {8, 31, 64, 128}) {
    const Image img = oracle::random_image(n, n, static_cast<std::uint64_t>(n));
    const Psd p = periodogram(img, {WindowKind::None, 1.0}, DcBin::Retained);
    const double expected = static_cast<double>(n) * n * sum_sq(img);
    EXPECT_NEAR(p.total(), expected, 1e-6 * expected);
  }
}

TEST(Periodogram, NonnegativeAndCentrallySymmetric) {
  const Psd p = periodogram(oracle::random_image(33, 20, 2), {});
  const auto& l = p.layout;
  double scale = 0.0;
  for (double v : p.bins) scale = std::max(scale, v);
  for (std::size_t i = 0; i < p.bins.size(); ++i) {
    EXPECT_GE(p.bins[i], 0.0);
    const int k1 = l.xi1_of(i);
    const int k2 = l.xi2_of(i);
    if (l.contains(-k1, -k2)) EXPECT_NEAR(p.at(-k1, -k2), p.bins[i], 1e-9 * scale);
  }
  EXPECT_EQ(p.at(0, 0), 0.0);
}

TEST(FrequencyLayout, FloorConvention) {
  const FrequencyLayout even(16, 16);
  EXPECT_EQ(even.xi1_min(), -8);
  EXPECT_EQ(even.xi1_max(), 7);
  const FrequencyLayout odd(17, 9);
  EXPECT_EQ(odd.xi1_min(), -8);
  EXPECT_EQ(odd.xi1_max(), 8);
  EXPECT_EQ(odd.xi2_min(), -4);
  EXPECT_EQ(odd.xi2_max(), 4);
  for (std::size_t i = 0; i < odd.size(); ++i)
    EXPECT_EQ(odd.index(odd.xi1_of(i), odd.xi2_of(i)), i);
}
