#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dilates/core.hpp"

namespace dilates {

/// {sum_i l_i a_i mod n : a_i in A}, folded one dilate at a time.
inline ResidueSet dilate_sumset(const DilateEquation& eq, const ResidueSet& a) {
  if (a.empty()) throw Error("dilate sumset of an empty set");
  auto coeffs = eq.coeffs();
  ResidueSet acc = a.dilated(coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) acc = acc.sumset(a.dilated(coeffs[i]));
  return acc;
}

/// True iff d is missing from the dilate sumset of A.
inline bool excludes(const DilateEquation& eq, const ResidueSet& a, std::int64_t d) {
  if (a.empty()) return true;
  return !dilate_sumset(eq, a).contains(d);
}

/// The interval {1, ..., floor((p+1)/4)}, whose A+A-2A misses an element of Z_p.
inline ResidueSet interval_construction(std::int64_t p) {
  ResidueSet s(p);
  for (std::int64_t x = 1; x <= (p + 1) / 4; ++x) s.insert(x);
  return s;
}

// ---------------------------------------------------------------------------

struct ShiftIdentity {
  std::int64_t gap = 0;
  std::int64_t target = 0;
  std::vector<std::int64_t> shifts;  // s_i in {0, gap}

  /// Symbolic check of sum_i l_i (a + s_i) == target: the a-coefficient is
  /// sum l_i and must vanish, the constant is sum l_i s_i.
  bool verify(const DilateEquation& eq) const {
    if (shifts.size() != eq.arity()) return false;
    __int128 constant = 0;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (shifts[i] != 0 && shifts[i] != gap) return false;
      constant += static_cast<__int128>(eq.coeffs()[i]) * shifts[i];
    }
    return eq.sum() == 0 && constant == target;
  }

  /// e.g. "10(a+1)+12a+15a+20(a+1)+30(a+1)-87a=60".
  std::string str(const DilateEquation& eq) const {
    std::string out;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      auto c = eq.coeffs()[i];
      if (i && c > 0) out += "+";
      out += std::to_string(c);
      out += shifts[i] ? "(a+" + std::to_string(shifts[i]) + ")" : "a";
    }
    return out + "=" + std::to_string(target);
  }
};

/// Lexicographically smallest s in {0, gap}^k with sum l_i s_i == target.
inline std::optional<ShiftIdentity> find_shift_identity(const DilateEquation& eq, std::int64_t gap,
                                                        std::int64_t target) {
  if (eq.sum() != 0) throw Error("shift identities need coefficients summing to zero");
  if (gap <= 0) throw Error("gap must be positive");
  const std::size_t k = eq.arity();
  if (k > 30) throw Error("too many coefficients for exhaustive shift search");
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
    ShiftIdentity id{gap, target, std::vector<std::int64_t>(k, 0)};
    __int128 total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      // Coordinate 0 is the most significant bit, so counting up is lex order.
      if (pattern >> (k - 1 - i) & 1U) {
        id.shifts[i] = gap;
        total += static_cast<__int128>(eq.coeffs()[i]) * gap;
      }
    }
    if (total == target) return id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct RefutationOptions {
  std::int64_t exhaustive_limit = 17;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::int64_t max_gap = 6;
};

struct RefutationReport {
  std::int64_t p = 0;
  bool exhaustive = false;
  std::int64_t min_size = 0;  // smallest |A| exceeding threshold * p
  std::int64_t sets_checked = 0;
  bool all_full = true;
  std::optional<ResidueSet> counterexample;
  std::map<std::int64_t, std::int64_t> gap_histogram;  // smallest gap in (A-A) ∩ {1..max_gap}; 0 = none
  std::vector<std::string> warnings;
};

namespace detail {

inline std::int64_t smallest_gap(const ResidueSet& a, std::int64_t max_gap) {
  for (std::int64_t g = 1; g <= max_gap; ++g) {
    for (auto x : a.members()) {
      if (a.contains(x + g)) return g;
    }
  }
  return 0;
}

}  // namespace detail

/// Checks that every A in Z_p with |A| > threshold * p has a full dilate sumset:
/// exhaustively for p <= exhaustive_limit, otherwise by seeded sampling of
/// sets of the minimal qualifying size.
inline RefutationReport refutation_demo(const DilateEquation& eq, std::int64_t p, const Rational& threshold,
                                        const RefutationOptions& opts = {}) {
  if (!is_prime(p)) throw Error("refutation demo needs a prime modulus");
  RefutationReport rep;
  rep.p = p;
  // smallest integer strictly greater than threshold * p
  Rational tp = threshold * Rational(p);
  BigInt fl = tp.num() / tp.den();  // floor for non-negative thresholds
  if (tp.sign() < 0) throw Error("threshold must be non-negative");
  rep.min_size = static_cast<std::int64_t>(fl.get_si()) + 1;

  auto check = [&](const ResidueSet& a) {
    ++rep.sets_checked;
    ++rep.gap_histogram[detail::smallest_gap(a, opts.max_gap)];
    if (!dilate_sumset(eq, a).is_full() && rep.all_full) {
      rep.all_full = false;
      rep.counterexample = a;
    }
  };

  if (p <= opts.exhaustive_limit && p <= 24) {
    rep.exhaustive = true;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << p); ++m) {
      if (std::popcount(m) < rep.min_size) continue;
      ResidueSet a(p);
      for (std::int64_t x = 0; x < p; ++x) {
        if (m >> x & 1U) a.insert(x);
      }
      check(a);
    }
    return rep;
  }

  rep.warnings.push_back("p=" + std::to_string(p) + " is above the exhaustive limit; sampling " +
                         std::to_string(opts.samples) + " sets");
  if (rep.min_size > p) return rep;
  std::mt19937_64 rng(opts.seed);
  std::vector<std::int64_t> pool(static_cast<std::size_t>(p));
  std::iota(pool.begin(), pool.end(), 0);
  for (int s = 0; s < opts.samples; ++s) {
    for (std::int64_t i = 0; i < rep.min_size; ++i) {
      auto j = i + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    check(residue_set_from_list(p, std::span(pool).first(static_cast<std::size_t>(rep.min_size))));
  }
  return rep;
}

}  // namespace dilates
