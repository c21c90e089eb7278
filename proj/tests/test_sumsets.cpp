#include <gtest/gtest.h>

#include <random>

#include "dilates/sumsets.hpp"
#include "naive.hpp"

using namespace dilates;

TEST(Sumsets, DilateSumsetMatchesNaive) {
  std::mt19937_64 rng(17);
  const std::vector<std::vector<std::int64_t>> eqs{{1, 1, -2}, {1, 2}, {3, -1, 5}, {2, -2, 1, 1}};
  for (int t = 0; t < 150; ++t) {
    const auto& coeffs = eqs[static_cast<std::size_t>(t) % eqs.size()];
    const std::int64_t p = std::vector<std::int64_t>{7, 11, 13, 17, 19}[rng() % 5];
    std::vector<std::int64_t> a;
    for (std::int64_t v = 0; v < p; ++v) {
      if (rng() % 4 == 0) a.push_back(v);
    }
    if (a.empty()) a.push_back(1);
    auto got = dilate_sumset(DilateEquation(coeffs), residue_set_from_list(p, a));
    auto want = naive::sumset(coeffs, a, p);
    EXPECT_EQ(got.members(), std::vector<std::int64_t>(want.begin(), want.end()));
  }
}

TEST(Sumsets, TranslationAndDilationCovariance) {
  // A+A-2A is translation invariant; dilation by u scales it by u.
  std::mt19937_64 rng(4);
  const auto eq = DilateEquation::canonical();
  for (int t = 0; t < 50; ++t) {
    const std::int64_t p = 29;
    ResidueSet a(p);
    for (std::int64_t v = 0; v < p; ++v) {
      if (rng() % 3 == 0) a.insert(v);
    }
    if (a.empty()) a.insert(0);
    auto base = dilate_sumset(eq, a);
    EXPECT_EQ(dilate_sumset(eq, a.translated(static_cast<std::int64_t>(rng() % p))), base);
    const auto u = 1 + static_cast<std::int64_t>(rng() % (p - 1));
    EXPECT_EQ(dilate_sumset(eq, a.dilated(u)), base.dilated(u));
  }
}

TEST(Sumsets, EmptySetIsRejected) { EXPECT_THROW(dilate_sumset(DilateEquation::canonical(), ResidueSet(7)), Error); }

TEST(Sumsets, IntervalConstructionMissesAValue) {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
    auto a = interval_construction(p);
    EXPECT_EQ(a.size(), (p + 1) / 4);
    EXPECT_FALSE(dilate_sumset(DilateEquation::canonical(), a).is_full()) << p;
  }
  EXPECT_EQ(interval_construction(13).members(), (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(Sumsets, ShiftIdentitiesForEveryGap) {
  DilateEquation eq({10, 12, 15, 20, 30, -87});
  const std::vector<std::vector<std::int64_t>> expected{
      {1, 0, 0, 1, 1, 0}, {0, 0, 0, 0, 2, 0}, {0, 0, 0, 3, 0, 0},
      {0, 0, 4, 0, 0, 0}, {0, 5, 0, 0, 0, 0}, {6, 0, 0, 0, 0, 0}};
  for (std::int64_t g = 1; g <= 6; ++g) {
    auto id = find_shift_identity(eq, g, 60);
    ASSERT_TRUE(id.has_value()) << g;
    EXPECT_TRUE(id->verify(eq));
    EXPECT_EQ(id->shifts, expected[static_cast<std::size_t>(g - 1)]);
  }
  EXPECT_FALSE(find_shift_identity(eq, 7, 60).has_value());
  EXPECT_THROW(find_shift_identity(DilateEquation({1, 2}), 1, 3), Error);
}

TEST(Sumsets, ShiftIdentityRejectsTamperedPattern) {
  DilateEquation eq({10, 12, 15, 20, 30, -87});
  auto id = *find_shift_identity(eq, 1, 60);
  id.shifts[0] = 0;
  EXPECT_FALSE(id.verify(eq));
}

TEST(Sumsets, RefutationDemoExhaustiveAndSampled) {
  const auto eq = DilateEquation::canonical();
  auto small = refutation_demo(eq, 13, Rational(1, 3));
  EXPECT_TRUE(small.exhaustive);
  EXPECT_EQ(small.min_size, 5);
  EXPECT_TRUE(small.all_full);
  auto big = refutation_demo(eq, 31, Rational(1, 3), RefutationOptions{17, 200, 9, 6});
  EXPECT_FALSE(big.exhaustive);
  EXPECT_EQ(big.sets_checked, 200);
  EXPECT_FALSE(big.warnings.empty());
  // The interval construction sits just below the threshold and is not full.
  auto tight = refutation_demo(eq, 13, Rational(2, 13));
  EXPECT_FALSE(tight.all_full);
  ASSERT_TRUE(tight.counterexample.has_value());
  EXPECT_FALSE(dilate_sumset(eq, *tight.counterexample).is_full());
}
