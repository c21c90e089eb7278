#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dilates/acceptance.hpp"
#include "dilates/lp_build.hpp"

using namespace dilates;

namespace {

LpProblem flagship() { return acceptance::flagship_problem(); }

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> sides(const WitnessSet& x, const Congruence& c) {
  return {x.subset(c.lhs), x.subset(c.rhs)};
}

}  // namespace

TEST(LpBuild, FlagshipDimensions) {
  auto lp = build_lp(flagship());
  EXPECT_EQ(lp.num_cols(), 53u);
  EXPECT_EQ(lp.num_rows(), 27u);
  EXPECT_EQ(lp.atoms.front().mask, 0u);
  for (const auto& row : lp.rows) {
    EXPECT_EQ(row.front(), 0);  // the empty atom meets no congruence
    EXPECT_TRUE(std::all_of(row.begin(), row.end(), [](int v) { return v >= -1 && v <= 1; }));
  }
}

TEST(LpBuild, PublishedRowsAppearInOrder) {
  auto x = flagship().witness;
  auto lp = build_lp(flagship());
  auto cert = acceptance::published_certificate();
  std::size_t pos = 0;
  std::vector<std::size_t> hits;
  for (const auto& want : cert.congruences) {
    while (pos < lp.num_rows() && sides(x, lp.congruences[pos]) != std::make_pair(want.lhs, want.rhs)) ++pos;
    ASSERT_LT(pos, lp.num_rows()) << "missing row " << join(want.lhs) << " ~ " << join(want.rhs);
    hits.push_back(pos++);
  }
  EXPECT_EQ(hits, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 20, 21, 23, 26}));
}

TEST(LpBuild, ShiftsAreConsistent) {
  for (auto mode : {ModeSpec::integer(), ModeSpec::modular(31)}) {
    LpProblem p{WitnessSet({0, 1, 2, 3, 10, 11, 12, 20, 21}), DilateEquation::canonical(), 2, mode, 0};
    auto lp = build_lp(p);
    for (const auto& c : lp.congruences) {
      auto [l, r] = sides(p.witness, c);
      std::vector<std::int64_t> moved;
      for (auto v : l) moved.push_back(mode.reduce(v + c.shift));
      std::sort(moved.begin(), moved.end());
      EXPECT_EQ(moved, r);
      if (mode.is_modular()) {
        EXPECT_GT(c.shift, 0);
        EXPECT_LT(c.shift, 31);
      }
    }
  }
}

TEST(LpBuild, ForbiddenTuplesAreSetsOfIndices) {
  // 3 + 3 - 2*0 = 6 repeats index 1; the forbidden set is {0, 1}.
  WitnessSet x({0, 3});
  auto t = forbidden_tuples(x, DilateEquation::canonical(), 6, ModeSpec::integer());
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].mask, 0b11u);
  auto atoms = enumerate_atoms(x, t);
  EXPECT_EQ(atoms.size(), 3u);
}

TEST(LpBuild, NonInjectiveWitnessIsRejected) {
  EXPECT_THROW(forbidden_tuples(WitnessSet({0, 5}), DilateEquation::canonical(), 1, ModeSpec::modular(5)), Error);
}

TEST(LpBuild, DfsAndDenseEnumerationAgree) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    std::set<std::int64_t> s;
    const auto size = 3 + rng() % 10;
    while (s.size() < size) s.insert(static_cast<std::int64_t>(rng() % 25));
    WitnessSet x(std::vector<std::int64_t>(s.begin(), s.end()));
    auto tuples = forbidden_tuples(x, DilateEquation::canonical(), static_cast<std::int64_t>(rng() % 9), ModeSpec::integer());
    auto dense = enumerate_atoms(x, tuples, AtomEnumeration::Dense);
    auto dfs = enumerate_atoms(x, tuples, AtomEnumeration::Dfs);
    EXPECT_EQ(dense, dfs);
    EXPECT_TRUE(std::is_sorted(dense.begin(), dense.end(),
                               [](const Atom& a, const Atom& b) { return atom_order_less(a.mask, b.mask); }));
  }
}

TEST(LpBuild, AtomsAreDownwardClosed) {
  auto lp = build_lp(flagship());
  std::set<IndexMask> masks;
  for (const auto& a : lp.atoms) masks.insert(a.mask);
  for (auto m : masks) {
    for (auto b = m; b; b &= b - 1) EXPECT_TRUE(masks.count(m & ~(b & -b)));
  }
}

TEST(LpBuild, IndicatorOrder) {
  // x1 is the most significant coordinate.
  EXPECT_TRUE(indicator_less(0b10, 0b01));
  EXPECT_TRUE(indicator_less(0b100, 0b011));
  EXPECT_FALSE(indicator_less(0b1, 0b1));
}

TEST(LpBuild, DenseLimit) {
  std::vector<std::int64_t> big;
  for (int i = 0; i < 26; ++i) big.push_back(100 * i);
  WitnessSet x(big);
  auto t = forbidden_tuples(x, DilateEquation::canonical(), 7, ModeSpec::integer());
  EXPECT_THROW(enumerate_atoms(x, t, AtomEnumeration::Dense), Error);
}

TEST(LpBuild, MatrixDump) {
  auto p = flagship();
  auto lp = build_lp(p);
  auto text = lp_matrix_text(p.witness, lp);
  EXPECT_EQ(text.rfind("e:", 0), 0u);
  EXPECT_NE(text.find("{10} ~ {9}:"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 28);
  auto meta = lp_metadata_json(p, lp);
  EXPECT_EQ(meta["cols"], 53);
  EXPECT_EQ(meta["atoms"].size(), 53u);
}
