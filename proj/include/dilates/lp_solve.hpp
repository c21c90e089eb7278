#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilates/lp_build.hpp"
#include "dilates/simplex.hpp"

namespace dilates {

struct LpSolution {
  Rational value;
  std::vector<Rational> primal;           // one per atom
  std::vector<Rational> dual_congruence;  // y, one per row of C
  Rational dual_normalization;            // mu
  std::size_t pivots = 0;
};

/// Exact optimum of the atomic-density program with primal and dual.
inline LpSolution simplex_max(const LinearProgram& lp) {
  if (lp.atoms.empty()) throw Error("infeasible: every atom is excluded");
  const auto m = lp.num_rows();
  const auto n = lp.num_cols();
  std::vector<std::vector<Rational>> a(m + 1, std::vector<Rational>(n));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) a[r][j] = Rational(lp.rows[r][j]);
  }
  for (std::size_t j = 0; j < n; ++j) a[m][j] = Rational(1);
  std::vector<Rational> b(m + 1, Rational(0));
  b[m] = Rational(1);
  std::vector<Rational> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = Rational(lp.objective[j]);

  auto res = solve_exact(a, b, c);
  if (res.status != LpStatus::Optimal) throw Error(std::string("simplex failed: ") + to_string(res.status));
  LpSolution sol;
  sol.value = res.value;
  sol.primal = std::move(res.x);
  sol.dual_normalization = res.dual[m];
  res.dual.pop_back();
  sol.dual_congruence = std::move(res.dual);
  sol.pivots = res.pivots;
  return sol;
}

/// Primal feasibility, dual feasibility and equal objectives, in exact arithmetic.
inline bool check_lp_solution(const LinearProgram& lp, const LpSolution& sol, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto n = lp.num_cols();
  if (sol.primal.size() != n || sol.dual_congruence.size() != lp.num_rows()) return fail("dimension mismatch");
  Rational total(0), obj(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (sol.primal[j].sign() < 0) return fail("negative primal entry");
    total += sol.primal[j];
    if (lp.objective[j]) obj += sol.primal[j];
  }
  if (total != Rational(1)) return fail("primal does not sum to 1");
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    Rational acc(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.rows[r][j]) acc += Rational(lp.rows[r][j]) * sol.primal[j];
    }
    if (!acc.is_zero()) return fail("congruence row " + std::to_string(r) + " violated");
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = sol.dual_normalization - Rational(lp.objective[j]);
    for (std::size_t r = 0; r < lp.num_rows(); ++r) {
      if (lp.rows[r][j]) s += Rational(lp.rows[r][j]) * sol.dual_congruence[r];
    }
    if (s.sign() < 0) return fail("dual infeasible at column " + std::to_string(j));
    // complementary slackness
    if (sol.primal[j].sign() > 0 && !s.is_zero()) return fail("complementary slackness fails at column " + std::to_string(j));
  }
  if (obj != sol.value || sol.value != sol.dual_normalization) return fail("objective mismatch");
  return true;
}

// ---------------------------------------------------------------------------

struct PruneOptions {
  std::uint64_t seed = 1;
  int restarts = 50;
  int threads = 1;
};

struct PruneResult {
  std::vector<std::size_t> rows;  // indices into the input program, ascending
  Rational value;
  std::size_t lp_solves = 0;
};

namespace detail {

struct PrunePass {
  std::vector<std::size_t> kept;
  std::size_t solves = 0;
};

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(restart) * 0xBF58476D1CE4E5B9ULL + 1;
}

/// One greedy sweep: drop rows in a seeded random order whenever the optimum
/// stays at `target`. A row whose current dual entry is zero is dropped
/// without solving, since the current dual still certifies the bound.
inline PrunePass prune_pass(const LinearProgram& lp, const std::vector<std::size_t>& start,
                            const std::vector<Rational>& start_dual, const Rational& target, std::uint64_t seed) {
  std::vector<std::size_t> order = start;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
  }
  std::set<std::size_t> active(start.begin(), start.end());
  std::vector<Rational> dual(lp.num_rows(), Rational(0));
  for (std::size_t i = 0; i < start.size(); ++i) dual[start[i]] = start_dual[i];

  PrunePass pass;
  for (auto row : order) {
    if (dual[row].is_zero()) {
      active.erase(row);
      continue;
    }
    std::vector<std::size_t> trial;
    for (auto r : active) {
      if (r != row) trial.push_back(r);
    }
    auto sol = simplex_max(lp.with_rows(trial));
    ++pass.solves;
    if (sol.value == target) {
      active.erase(row);
      std::fill(dual.begin(), dual.end(), Rational(0));
      for (std::size_t i = 0; i < trial.size(); ++i) dual[trial[i]] = sol.dual_congruence[i];
    }
  }
  pass.kept.assign(active.begin(), active.end());
  return pass;
}

}  // namespace detail

/// Greedy random-order row elimination with restarts; keeps the smallest row
/// subset (ties: lexicographically smallest) whose optimum is still `target`.
/// The result is minimal under single-row removal.
inline PruneResult prune_congruences(const LinearProgram& lp, const Rational& target, const PruneOptions& opts = {}) {
  auto full = simplex_max(lp);
  if (full.value != target) {
    throw Error("prune target " + target.str() + " differs from the optimum " + full.value.str());
  }
  // Exact duplicate rows go first.
  std::vector<std::size_t> start;
  std::set<std::vector<int>> seen;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    if (seen.insert(lp.rows[r]).second) start.push_back(r);
  }
  PruneResult best;
  best.value = target;
  best.lp_solves = 1;
  if (start.size() != lp.num_rows()) {
    full = simplex_max(lp.with_rows(start));
    ++best.lp_solves;
  }
  const auto& start_dual = full.dual_congruence;

  const int restarts = std::max(1, opts.restarts);
  std::vector<detail::PrunePass> passes(static_cast<std::size_t>(restarts));
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    for (int r = 0; r < restarts; ++r) {
      passes[static_cast<std::size_t>(r)] =
          detail::prune_pass(lp, start, start_dual, target, detail::restart_seed(opts.seed, r));
    }
  } else {
    for (int lo = 0; lo < restarts; lo += threads) {
      std::vector<std::future<detail::PrunePass>> jobs;
      for (int r = lo; r < std::min(restarts, lo + threads); ++r) {
        jobs.push_back(std::async(std::launch::async, [&, r] {
          return detail::prune_pass(lp, start, start_dual, target, detail::restart_seed(opts.seed, r));
        }));
      }
      for (int r = lo; r < std::min(restarts, lo + threads); ++r) {
        passes[static_cast<std::size_t>(r)] = jobs[static_cast<std::size_t>(r - lo)].get();
      }
    }
  }
  bool first = true;
  for (auto& p : passes) {
    best.lp_solves += p.solves;
    if (first || p.kept.size() < best.rows.size() || (p.kept.size() == best.rows.size() && p.kept < best.rows)) {
      best.rows = p.kept;
      first = false;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

struct IntegerizeResult {
  std::vector<Rational> y;  // aligned with the program's rows
  bool complete = false;    // every coordinate had a finite minimum
  bool all_integer = false;
  std::string detail;
};

/// Coordinate-wise dual: for each row i in order, minimize y_i subject to
/// y^T C - q e + r 1 >= 0 with y_1..y_{i-1} already fixed, then fix it.
inline IntegerizeResult integerize_dual(const LinearProgram& lp, const Rational& bound) {
  const Rational q(bound.den());
  const Rational r(bound.num());
  const auto m = lp.num_rows();
  const auto n = lp.num_cols();
  IntegerizeResult out;

  if (m == 0) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r - q * Rational(lp.objective[j]) < Rational(0)) {
        out.detail = "bound " + bound.str() + " is below the optimum";
        return out;
      }
    }
    out.complete = out.all_integer = true;
    return out;
  }

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t free_rows = m - i;
    // columns: y+_j, y-_j for j = i..m-1, then one surplus per atom
    const std::size_t cols = 2 * free_rows + n;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(cols, Rational(0)));
    std::vector<Rational> b(n);
    for (std::size_t s = 0; s < n; ++s) {
      Rational rhs = q * Rational(lp.objective[s]) - r;
      for (std::size_t j = 0; j < i; ++j) {
        if (lp.rows[j][s]) rhs -= out.y[j] * Rational(lp.rows[j][s]);
      }
      b[s] = rhs;
      for (std::size_t j = i; j < m; ++j) {
        int v = lp.rows[j][s];
        if (!v) continue;
        a[s][2 * (j - i)] = Rational(v);
        a[s][2 * (j - i) + 1] = Rational(-v);
      }
      a[s][2 * free_rows + s] = Rational(-1);
    }
    std::vector<Rational> c(cols, Rational(0));
    c[0] = Rational(-1);  // maximize -y_i
    c[1] = Rational(1);
    auto res = solve_exact(a, b, c);
    if (res.status == LpStatus::Infeasible) {
      out.detail = "bound " + bound.str() + " admits no dual certificate";
      return out;
    }
    if (res.status != LpStatus::Optimal) {
      out.detail = "coordinate " + std::to_string(i + 1) + " is unbounded below";
      return out;
    }
    out.y.push_back(-res.value);
  }
  out.complete = true;
  out.all_integer = std::all_of(out.y.begin(), out.y.end(), [](const Rational& v) { return v.is_integer(); });
  return out;
}

/// The solver's own dual scaled to q: q*y satisfies (q y)^T C - q e + r 1 >= 0.
inline std::vector<Rational> scaled_dual(const LpSolution& sol) {
  Rational q(sol.value.den());
  std::vector<Rational> y;
  for (const auto& v : sol.dual_congruence) y.push_back(v * q);
  return y;
}

/// Slack vector y^T C - q e + r 1 computed directly from the program.
inline std::vector<Rational> dual_slack(const LinearProgram& lp, std::span<const Rational> y, const Rational& bound) {
  const Rational q(bound.den()), r(bound.num());
  std::vector<Rational> s(lp.num_cols());
  for (std::size_t j = 0; j < lp.num_cols(); ++j) {
    Rational v = r - q * Rational(lp.objective[j]);
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
      if (lp.rows[i][j]) v += y[i] * Rational(lp.rows[i][j]);
    }
    s[j] = v;
  }
  return s;
}

inline nlohmann::ordered_json solution_json(const LpSolution& sol) {
  nlohmann::ordered_json j;
  j["value"] = sol.value.str();
  auto strs = [](const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
  };
  j["primal"] = strs(sol.primal);
  j["dual_congruence"] = strs(sol.dual_congruence);
  j["dual_normalization"] = sol.dual_normalization.str();
  return j;
}

}  // namespace dilates
