#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "dilates/lp_build.hpp"
#include "dilates/lp_solve.hpp"

namespace dilates {

/// LP bound of a single witness set, objective on its first element.
inline Rational evaluate_witness(const WitnessSet& x, const DilateEquation& eq, std::int64_t d, const ModeSpec& mode) {
  return simplex_max(build_lp(LpProblem{x, eq, d, mode, x[0]})).value;
}

struct WitnessSearchOptions {
  DilateEquation eq = DilateEquation::canonical();
  std::int64_t d = 6;
  ModeSpec mode = ModeSpec::integer();
  std::int64_t range_limit = 10;  // elements drawn from [0, range_limit]
  std::size_t n_max = 8;
  std::uint64_t seed = 1;
  std::size_t budget = 2000;      // LP solves
};

struct WitnessSearchResult {
  std::vector<std::int64_t> witness;
  Rational bound{1};
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

/// Seeded hill climbing over witness sets with add / remove / move-one-element
/// steps. Lower LP bound is better, then fewer elements.
inline WitnessSearchResult search_witness(const WitnessSearchOptions& opts) {
  if (opts.n_max < 1 || opts.n_max > 12) throw Error("n_max must be in 1..12");
  if (opts.range_limit < 0) throw Error("range limit must be non-negative");
  if (opts.mode.is_modular() && opts.range_limit >= opts.mode.modulus()) {
    throw Error("range limit must stay below the modulus");
  }
  const auto universe = static_cast<std::size_t>(opts.range_limit + 1);
  const std::size_t n_max = std::min(opts.n_max, universe);

  std::mt19937_64 rng(opts.seed);
  std::map<std::vector<std::int64_t>, Rational> cache;
  WitnessSearchResult res;

  auto better = [](const Rational& b1, std::size_t s1, const Rational& b2, std::size_t s2) {
    return b1 < b2 || (b1 == b2 && s1 < s2);
  };
  // Returns false when the budget is spent.
  auto eval = [&](const std::vector<std::int64_t>& xs, Rational& out) {
    if (auto it = cache.find(xs); it != cache.end()) {
      out = it->second;
      return true;
    }
    if (res.evaluations >= opts.budget) {
      res.budget_exhausted = true;
      return false;
    }
    ++res.evaluations;
    out = evaluate_witness(WitnessSet(xs), opts.eq, opts.d, opts.mode);
    cache.emplace(xs, out);
    if (res.witness.empty() || better(out, xs.size(), res.bound, res.witness.size()) ||
        (out == res.bound && xs.size() == res.witness.size() && xs < res.witness)) {
      res.witness = xs;
      res.bound = out;
    }
    return true;
  };
  auto random_set = [&] {
    std::vector<std::int64_t> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < n_max; ++i) std::swap(pool[i], pool[i + rng() % (universe - i)]);
    std::vector<std::int64_t> xs(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_max));
    std::sort(xs.begin(), xs.end());
    return xs;
  };

  int stale_restarts = 0;
  while (!res.budget_exhausted && stale_restarts < 50) {
    const auto before = res.evaluations;
    auto cur = random_set();
    Rational cur_bound;
    if (!eval(cur, cur_bound)) break;
    for (bool improved = true; improved && !res.budget_exhausted;) {
      improved = false;
      std::vector<std::vector<std::int64_t>> nbrs;
      std::vector<bool> present(universe, false);
      for (auto v : cur) present[static_cast<std::size_t>(v)] = true;
      for (std::size_t i = 0; i < cur.size() && cur.size() > 1; ++i) {
        auto nb = cur;
        nb.erase(nb.begin() + static_cast<std::ptrdiff_t>(i));
        nbrs.push_back(std::move(nb));
      }
      for (std::size_t v = 0; v < universe; ++v) {
        if (present[v]) continue;
        if (cur.size() < n_max) {
          auto nb = cur;
          nb.push_back(static_cast<std::int64_t>(v));
          std::sort(nb.begin(), nb.end());
          nbrs.push_back(std::move(nb));
        }
        for (std::size_t i = 0; i < cur.size(); ++i) {
          auto nb = cur;
          nb[i] = static_cast<std::int64_t>(v);
          std::sort(nb.begin(), nb.end());
          nbrs.push_back(std::move(nb));
        }
      }
      for (std::size_t i = nbrs.size(); i > 1; --i) std::swap(nbrs[i - 1], nbrs[static_cast<std::size_t>(rng() % i)]);
      for (const auto& nb : nbrs) {
        Rational b;
        if (!eval(nb, b)) break;
        if (better(b, nb.size(), cur_bound, cur.size())) {
          cur = nb;
          cur_bound = b;
          improved = true;
          break;
        }
      }
    }
    stale_restarts = res.evaluations == before ? stale_restarts + 1 : 0;
  }
  return res;
}

}  // namespace dilates
