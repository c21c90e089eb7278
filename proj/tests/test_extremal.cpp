#include <gtest/gtest.h>

#include <random>

#include "dilates/extremal.hpp"
#include "naive.hpp"

using namespace dilates;

TEST(Extremal, MatchesExhaustiveSearchOnSmallGrounds) {
  std::mt19937_64 rng(8);
  const std::vector<std::vector<std::int64_t>> eqs{{1, 1, -2}, {1, 2, -3}, {2, 3}, {1, 1, 1, -3}};
  for (int t = 0; t < 60; ++t) {
    const auto& coeffs = eqs[static_cast<std::size_t>(t) % eqs.size()];
    AvoidanceInstance inst;
    inst.eq = DilateEquation(coeffs);
    const bool modular = t % 3 == 0;
    const std::int64_t n = modular ? 13 : 0;
    std::set<std::int64_t> g;
    // Keep the exhaustive oracle cheap: it is exponential in the ground size.
    const std::size_t size = 6 + static_cast<std::size_t>(rng() % (coeffs.size() > 3 ? 5 : 9));
    while (g.size() < size) g.insert(static_cast<std::int64_t>(rng() % (modular ? 13 : 30)));
    inst.ground.assign(g.begin(), g.end());
    inst.d = static_cast<std::int64_t>(rng() % 12) + (modular ? 1 : -3);
    if (modular) inst.mode = ModeSpec::modular(n);
    auto r = max_avoiding_subset(inst);
    EXPECT_TRUE(r.proved);
    EXPECT_EQ(static_cast<std::size_t>(r.optimum), naive::max_avoiding(inst.ground, coeffs, inst.d, n)) << t;
    EXPECT_EQ(r.witness.size(), static_cast<std::size_t>(r.optimum));
    EXPECT_TRUE(avoids(inst, r.witness));
  }
}

TEST(Extremal, ExcludingSetSizeFollowsQuarterRule) {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    auto r = max_excluding_set(p, DilateEquation::canonical(), 1);
    EXPECT_TRUE(r.proved);
    EXPECT_EQ(r.optimum, (p + 1) / 4) << p;
  }
}

TEST(Extremal, ExcludingSetIsIndependentOfNonzeroTarget) {
  for (std::int64_t d = 1; d < 13; ++d) {
    EXPECT_EQ(max_excluding_set(13, DilateEquation::canonical(), d).optimum, 3);
  }
  EXPECT_THROW(max_excluding_set(13, DilateEquation::canonical(), 0), Error);
  EXPECT_THROW(max_excluding_set(15, DilateEquation::canonical(), 1), Error);
  EXPECT_THROW(max_excluding_set(67, DilateEquation::canonical(), 1), Error);
}

TEST(Extremal, CanonicalWitnessIsLexicographicallySmallest) {
  SearchOptions opts;
  opts.canonical = true;
  auto r = max_excluding_set(13, DilateEquation::canonical(), 1, opts);
  auto all = all_optimal_witnesses(
      AvoidanceInstance{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, DilateEquation::canonical(), 1, ModeSpec::modular(13)},
      r.optimum);
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(r.witness, all.front());
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Extremal, IntervalOfFortyTwo) {
  SearchOptions opts;
  opts.canonical = true;
  auto r = max_avoiding_subset(AvoidanceInstance::interval(0, 41, DilateEquation::canonical(), 6), opts);
  EXPECT_TRUE(r.proved);
  EXPECT_EQ(r.optimum, 12);
  EXPECT_EQ(r.witness, (std::vector<std::int64_t>{0, 1, 2, 11, 12, 13, 22, 23, 24, 33, 34, 35}));
  EXPECT_EQ(density_bound_from_delta(r.optimum, 42), Rational(2, 7));
}

TEST(Extremal, ThreadedSearchAgrees) {
  SearchOptions opts;
  opts.threads = 2;
  auto r = max_avoiding_subset(AvoidanceInstance::interval(0, 41, DilateEquation::canonical(), 6), opts);
  EXPECT_EQ(r.optimum, 12);
  EXPECT_TRUE(r.proved);
}

TEST(Extremal, NodeBudgetReportsUnproved) {
  SearchOptions opts;
  opts.node_budget = 10;
  auto r = max_avoiding_subset(AvoidanceInstance::interval(0, 41, DilateEquation::canonical(), 6), opts);
  EXPECT_FALSE(r.proved);
  EXPECT_LE(r.optimum, 12);
}

TEST(Extremal, MonotoneInTheGround) {
  const auto eq = DilateEquation::canonical();
  std::int64_t prev = 0;
  for (std::int64_t hi = 0; hi <= 30; ++hi) {
    auto r = max_avoiding_subset(AvoidanceInstance::interval(0, hi, eq, 6));
    EXPECT_GE(r.optimum, prev);
    EXPECT_LE(r.optimum, prev + 1);
    prev = r.optimum;
  }
}

TEST(Extremal, GroundLimit) {
  EXPECT_THROW(max_avoiding_subset(AvoidanceInstance::interval(0, 64, DilateEquation::canonical(), 6)), Error);
}

TEST(Extremal, AvoidingSubsetCounts) {
  const std::vector<int> diffs{1, 2};
  EXPECT_EQ(count_avoiding_subsets(14, 5, diffs), 6u);
  EXPECT_EQ(count_avoiding_subsets(14, 4, diffs), 70u);
  EXPECT_EQ(count_avoiding_subsets(14, 3, diffs), 120u);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    int m = 1 + static_cast<int>(rng() % 16);
    int k = static_cast<int>(rng() % (m + 1));
    std::vector<int> fd{1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 7)};
    EXPECT_EQ(count_avoiding_subsets(m, k, fd), naive::count_avoiding(m, k, fd));
  }
}
