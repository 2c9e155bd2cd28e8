#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <aniso/bresenham.hpp>
#include <aniso/filterbank.hpp>

#include "oracles.hpp"

using namespace aniso;

namespace {

std::vector<double> mask_sums(const FilterBank& bank) {
  std::vector<double> sums(bank.layout().size(), 0.0);
  for (std::size_t i = 0; i < sums.size(); ++i)
    for (const auto& e : bank.entries_at(i)) sums[i] += e.weight;
  return sums;
}

double radius(int xi1, int xi2) { return std::sqrt(static_cast<double>(xi1 * xi1 + xi2 * xi2)); }

// mask_{m + M/2}(R90 xi) must equal mask_m(xi) bit for bit.
void expect_quarter_turn_covariance(const FilterBank& bank) {
  const auto& l = bank.layout();
  const int M = bank.angle_count();
  ASSERT_EQ(M % 2, 0);
  for (int m : {0, 1, 7, M / 4, M / 2 - 1, M / 2, M - 1}) {
    const int m90 = (m + M / 2) % M;
    const auto a = bank.mask(m);
    const auto b = bank.mask(m90);
    for (std::size_t i = 0; i < l.size(); ++i) {
      std::size_t j = 0;
      if (!oracle::rotated_index(l, l.xi1_of(i), l.xi2_of(i), &j)) continue;
      ASSERT_EQ(b[j], a[i]) << "m=" << m << " xi=(" << l.xi1_of(i) << "," << l.xi2_of(i) << ")";
    }
  }
}

void expect_common_invariants(const FilterBank& bank) {
  const auto& l = bank.layout();
  EXPECT_TRUE(bank.entries_at(l.index(0, 0)).empty());
  for (std::size_t i = 0; i < l.size(); ++i) {
    const int k1 = l.xi1_of(i);
    const int k2 = l.xi2_of(i);
    for (const auto& e : bank.entries_at(i)) {
      EXPECT_GE(e.weight, 0.0);
      if (l.contains(-k1, -k2)) ASSERT_EQ(bank.value(e.angle_index, -k1, -k2), e.weight);
    }
  }
}

}  // namespace

TEST(Method, NamesRoundTrip) {
  for (Method m : {Method::CakeWavelet, Method::Ridge, Method::Binning})
    EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("wedge"), ValidationError);
}

TEST(CakeBank, PartitionOfUnityOnAnnulus) {
  for (auto [h, w] : {std::pair{64, 64}, std::pair{48, 37}}) {
    const auto bank = make_cake_bank(h, w, 180);
    const auto sums = mask_sums(bank);
    const auto& l = bank.layout();
    const double rn = l.nyquist_radius();
    for (std::size_t i = 0; i < sums.size(); ++i) {
      const double r = radius(l.xi1_of(i), l.xi2_of(i));
      if (r >= 0.02 * rn && r <= rn) {
        ASSERT_NEAR(sums[i], 1.0, 1e-9);
      } else {
        ASSERT_EQ(sums[i], 0.0);
      }
    }
  }
}

TEST(CakeBank, OwnAngleIsMaximal) {
  const auto bank = make_cake_bank(64, 64, 180);
  struct Case {
    int xi1, xi2, m;
  };
  for (const auto c : {Case{10, 0, 0}, Case{7, 7, 45}, Case{0, 9, 90}, Case{-5, 5, 135}}) {
    const double own = bank.value(c.m, c.xi1, c.xi2);
    EXPECT_GT(own, 0.0);
    for (int m = 0; m < 180; ++m) EXPECT_LE(bank.value(m, c.xi1, c.xi2), own);
  }
}

TEST(CakeBank, Invariants) {
  expect_common_invariants(make_cake_bank(64, 64, 180));
  expect_common_invariants(make_cake_bank(33, 40, 36));
}

TEST(CakeBank, QuarterTurnCovariance) {
  expect_quarter_turn_covariance(make_cake_bank(64, 64, 180));
  expect_quarter_turn_covariance(make_cake_bank(31, 31, 90));
}

TEST(CakeBank, RejectsBadArguments) {
  EXPECT_THROW(make_cake_bank(64, 64, 3), ValidationError);
  EXPECT_THROW(make_cake_bank(8, 8, 180, {2.0, 30.0, 0.3, 0.31}), ValidationError);
  EXPECT_THROW(make_cake_bank(64, 64, 180, {0.5, 30.0, 0.02, 1.0}), ValidationError);
  EXPECT_THROW(make_cake_bank(64, 64, 180, {2.0, 30.0, 0.5, 0.4}), ValidationError);
  // A wedge narrower than half a grid step leaves directions uncovered.
  EXPECT_THROW(make_cake_bank(64, 64, 18, {2.0, 4.0, 0.02, 1.0}), ValidationError);
}

TEST(RidgeBank, OnLineAndOneSigma) {
  const auto bank = make_ridge_bank(64, 64, 180, {1.0, 0.02, 1.0, 9.0});
  EXPECT_DOUBLE_EQ(bank.value(0, 5, 0), 1.0);
  EXPECT_DOUBLE_EQ(bank.value(90, 0, -12), 1.0);
  EXPECT_DOUBLE_EQ(bank.value(45, 6, 6), 1.0);
  EXPECT_NEAR(bank.value(0, 10, 1), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(bank.value(90, 2, 20), std::exp(-2.0), 1e-12);
  // Outside the radial band.
  EXPECT_EQ(bank.value(0, 0, 0), 0.0);
}

TEST(RidgeBank, Invariants) {
  expect_common_invariants(make_ridge_bank(64, 64, 180));
  expect_quarter_turn_covariance(make_ridge_bank(64, 64, 180));
  expect_quarter_turn_covariance(make_ridge_bank(45, 45, 60));
}

TEST(RidgeBank, RejectsBadArguments) {
  EXPECT_THROW(make_ridge_bank(64, 64, 2), ValidationError);
  EXPECT_THROW(make_ridge_bank(64, 64, 180, {0.0}), ValidationError);
  EXPECT_THROW(make_ridge_bank(8, 8, 180, {1.5, 0.3, 0.31}), ValidationError);
}

TEST(BinningBank, BinaryPartition) {
  const auto bank = make_binning_bank(40, 33, 180);
  const auto& l = bank.layout();
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto entries = bank.entries_at(i);
    if (l.xi1_of(i) == 0 && l.xi2_of(i) == 0) {
      EXPECT_TRUE(entries.empty());
      continue;
    }
    ASSERT_EQ(entries.size(), 1u);
    EXPECT_EQ(entries[0].weight, 1.0);
  }
  expect_common_invariants(bank);
  expect_quarter_turn_covariance(make_binning_bank(64, 64, 180));
}

TEST(BinningBank, AxisFrequencyGoesToZeroBin) {
  const auto bank = make_binning_bank(64, 64, 180);
  EXPECT_EQ(bank.value(0, 5, 0), 1.0);
  EXPECT_EQ(bank.value(0, -5, 0), 1.0);
  EXPECT_EQ(bank.value(90, 0, 5), 1.0);
}

TEST(BinningBank, NearestAngleTiesGoToSmallerIndex) {
  const auto b4 = make_binning_bank(16, 16, 4);
  EXPECT_EQ(b4.value(1, 2, 1), 1.0);  // 26.6 deg is nearer 45 than 0
  EXPECT_EQ(b4.value(2, 1, 3), 1.0);
  // M = 6: (1, 1) at 45 deg is equidistant from 30 (m = 1) and 60 (m = 2).
  const auto b6 = make_binning_bank(16, 16, 6);
  EXPECT_EQ(b6.value(1, 1, 1), 1.0);
  EXPECT_EQ(b6.value(2, 1, 1), 0.0);
}

TEST(BinningBank, CountsFavourAxisAngles) {
  const auto bank = make_binning_bank(128, 128, 180);
  std::vector<int> counts(180, 0);
  int total = 0;
  for (std::size_t i = 0; i < bank.layout().size(); ++i)
    for (const auto& e : bank.entries_at(i)) {
      ++counts[e.angle_index];
      ++total;
    }
  // Frozen from an independent enumeration of the 128 x 128 grid.
  EXPECT_EQ(counts[0], 127);
  EXPECT_EQ(counts[30], 95);
  EXPECT_EQ(counts[45], 153);
  EXPECT_EQ(counts[90], 127);
  EXPECT_EQ(total, 128 * 128 - 1);
  EXPECT_GT(counts[0], counts[30]);
}

TEST(FilterBanks, SmoothInAngle) {
  for (Method method : {Method::CakeWavelet, Method::Ridge}) {
    double previous = INFINITY;
    for (int M : {45, 90, 180}) {
      const auto bank = make_bank(method, 64, 64, M);
      double worst = 0.0;
      for (int m = 0; m < M; ++m) {
        const auto a = bank.mask(m);
        const auto b = bank.mask((m + 1) % M);
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
      }
      EXPECT_LT(worst, previous) << method_name(method) << " M=" << M;
      previous = worst;
    }
  }
}

TEST(FilterBanks, SparseStorageMatchesDense) {
  const auto bank = make_ridge_bank(32, 32, 36);
  std::size_t nonzero = 0;
  for (int m = 0; m < 36; ++m)
    for (double v : bank.mask(m)) nonzero += v > 0.0;
  EXPECT_EQ(nonzero, bank.stored_entries());
}

TEST(Bresenham, ReferenceLines) {
  using P = GridPoint;
  EXPECT_EQ(bresenham_line({0, 0}, {3, 0}), (std::vector<P>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
  EXPECT_EQ(bresenham_line({0, 0}, {2, 2}), (std::vector<P>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(bresenham_line({0, 0}, {5, 2}),
            (std::vector<P>{{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}, {5, 2}}));
  EXPECT_EQ(bresenham_line({2, 3}, {2, 3}), (std::vector<P>{{2, 3}}));
}

TEST(Bresenham, EightConnectedAndReversible) {
  for (auto [x, y] : {std::pair{7, -3}, std::pair{-4, 11}, std::pair{-9, -9}, std::pair{0, -6}}) {
    const auto line = bresenham_line({0, 0}, {x, y});
    EXPECT_EQ(line.front(), (GridPoint{0, 0}));
    EXPECT_EQ(line.back(), (GridPoint{x, y}));
    EXPECT_EQ(line.size(), static_cast<std::size_t>(std::max(std::abs(x), std::abs(y))) + 1);
    for (std::size_t i = 1; i < line.size(); ++i) {
      EXPECT_LE(std::abs(line[i].x - line[i - 1].x), 1);
      EXPECT_LE(std::abs(line[i].y - line[i - 1].y), 1);
    }
  }
}

TEST(Bresenham, LineMaskIsSymmetricWithoutDc) {
  const FrequencyLayout l(32, 32);
  for (double angle : {0.0, 30.0, 90.0, 117.0}) {
    const auto mask = line_mask(l, angle);
    EXPECT_EQ(mask[l.index(0, 0)], 0.0);
    int count = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] == 0.0) continue;
      ++count;
      const int k1 = l.xi1_of(i);
      const int k2 = l.xi2_of(i);
      if (l.contains(-k1, -k2)) EXPECT_EQ(mask[l.index(-k1, -k2)], 1.0);
    }
    // Both half-lines of the Bresenham segment, less the one clipped endpoint.
    const double r = l.nyquist_radius();
    const long steps = std::max(std::lround(std::abs(r * std::cos(angle * std::numbers::pi / 180.0))),
                                std::lround(std::abs(r * std::sin(angle * std::numbers::pi / 180.0))));
    EXPECT_GE(count, 2 * steps - 1);
  }
  const auto zero = line_mask(l, 0.0);
  for (int k = 1; k < 16; ++k) EXPECT_EQ(zero[l.index(k, 0)], 1.0);
}
