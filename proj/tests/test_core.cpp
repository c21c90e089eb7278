#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dilates/core.hpp"
#include "naive.hpp"

using namespace dilates;

TEST(Core, DilateEquationValidation) {
  EXPECT_THROW(DilateEquation({1}), Error);
  EXPECT_THROW(DilateEquation({1, 0, -1}), Error);
  auto eq = DilateEquation::canonical();
  EXPECT_EQ(eq.arity(), 3u);
  EXPECT_EQ(eq.sum(), 0);
}

TEST(Core, ModeReduction) {
  auto m = ModeSpec::modular(7);
  EXPECT_EQ(m.reduce(-1), 6);
  EXPECT_EQ(m.reduce(15), 1);
  EXPECT_EQ(ModeSpec::integer().reduce(-5), -5);
  EXPECT_THROW(ModeSpec::modular(0), Error);
}

TEST(Core, WitnessSetInvariants) {
  EXPECT_THROW(WitnessSet(std::vector<std::int64_t>{}), Error);
  EXPECT_THROW(WitnessSet({3, 1}), Error);
  EXPECT_THROW(WitnessSet({1, 1}), Error);
  EXPECT_THROW(WitnessSet({-1, 2}), Error);
  WitnessSet x({0, 2, 3, 4, 7, 8, 9, 10});
  EXPECT_EQ(x.index_of(7), 4);
  EXPECT_EQ(x.index_of(5), -1);
  EXPECT_EQ(x.subset(0b10000011), (std::vector<std::int64_t>{0, 2, 10}));
  EXPECT_TRUE(x.injective_in(ModeSpec::modular(11)));
  EXPECT_FALSE(x.injective_in(ModeSpec::modular(5)));
  EXPECT_EQ(WitnessSet::from_unsorted({4, 0, 2}).str(), "{0,2,4}");
}

TEST(Core, ResidueSetOperations) {
  auto a = residue_set_from_list(11, std::vector<std::int64_t>{1, 2, 15});
  EXPECT_EQ(a.size(), 3);
  EXPECT_TRUE(a.contains(4));
  EXPECT_TRUE(a.contains(-9));
  EXPECT_EQ(a.dilated(2).members(), (std::vector<std::int64_t>{2, 4, 8}));
  EXPECT_EQ(a.translated(10).members(), (std::vector<std::int64_t>{0, 1, 3}));
  EXPECT_TRUE(ResidueSet::full(5).is_full());
  a.erase(4);
  EXPECT_EQ(a.size(), 2);
}

TEST(Core, SumsetMatchesNaive) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::int64_t n = 3 + static_cast<std::int64_t>(rng() % 90);
    ResidueSet a(n), b(n);
    for (std::int64_t v = 0; v < n; ++v) {
      if (rng() % 4 == 0) a.insert(v);
      if (rng() % 4 == 0) b.insert(v);
    }
    if (a.empty() || b.empty()) continue;
    auto s = a.sumset(b);
    std::set<std::int64_t> want;
    for (auto x : a.members()) {
      for (auto y : b.members()) want.insert((x + y) % n);
    }
    EXPECT_EQ(s.members(), std::vector<std::int64_t>(want.begin(), want.end()));
  }
}

TEST(Core, SolutionEnumerationMatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::int64_t> coeffs;
    const int k = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
      coeffs.push_back(rng() % 2 ? c : -c);
    }
    DilateEquation eq(coeffs);
    std::set<std::int64_t> vals;
    while (vals.size() < 5) vals.insert(static_cast<std::int64_t>(rng() % 20));
    std::vector<std::int64_t> values(vals.begin(), vals.end());
    const bool modular = t % 2 == 1;
    const std::int64_t n = 23;
    auto mode = modular ? ModeSpec::modular(n) : ModeSpec::integer();
    const std::int64_t target = static_cast<std::int64_t>(rng() % 15) - 5;

    std::set<std::vector<int>> got, want;
    for_each_solution(values, eq, target, mode,
                      [&](std::span<const int> idx) { got.emplace(idx.begin(), idx.end()); });
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    for (;;) {
      std::int64_t s = 0;
      for (int j = 0; j < k; ++j) s += coeffs[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      if (mode.reduce(s) == mode.reduce(target)) want.insert(idx);
      int p = 0;
      while (p < k && ++idx[static_cast<std::size_t>(p)] == 5) idx[static_cast<std::size_t>(p++)] = 0;
      if (p == k) break;
    }
    EXPECT_EQ(got, want);
  }
}

TEST(Core, MinimalMasksDropSupersets) {
  auto m = minimal_masks({0b111, 0b011, 0b100, 0b110});
  EXPECT_EQ(m, (std::vector<IndexMask>{0b011, 0b100}));
}

TEST(Core, ModularInverseAndPrimality) {
  EXPECT_EQ(mod_inverse(3, 7), 5);
  EXPECT_EQ(mod_inverse(2, 8), 0);
  EXPECT_TRUE(is_prime(151));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
}
