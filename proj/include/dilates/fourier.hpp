#pragma once

// Fourier-augmented program. Floating point stays in this header: nothing
// here feeds certificates.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilates/lp_build.hpp"
#include "dilates/lp_solve.hpp"
#include "dilates/simplex.hpp"

namespace dilates {

struct PositiveDefiniteProfile {
  std::vector<Rational> f;      // f(x) = |A ∩ (A - x)| / n, x = 0..n-1
  Rational constant;            // |A|^2 / n^2
  std::vector<double> kappa;    // kappa_1 .. kappa_{(n-1)/2}
  double min_kappa = 0;
  double reconstruction_error = 0;
  bool ok = false;              // kappa >= -1e-9 and error <= 1e-9
};

/// f(x) = delta(A ∩ (A - x)) exactly, and its cosine expansion
/// f(x) = |A|^2/n^2 + sum_m kappa_m cos(2 pi m x / n) for odd n.
inline PositiveDefiniteProfile positive_definite_profile(const ResidueSet& a) {
  const auto n = a.modulus();
  if (n % 2 == 0) throw Error("cosine expansion needs an odd modulus");
  if (a.empty()) throw Error("profile of an empty set");
  PositiveDefiniteProfile prof;
  const auto members = a.members();
  for (std::int64_t x = 0; x < n; ++x) {
    std::int64_t c = 0;
    for (auto v : members) c += a.contains(v + x) ? 1 : 0;
    prof.f.push_back(rational(c, n));
  }
  prof.constant = rational(a.size() * a.size(), n * n);
  const double two_pi = 2.0 * std::numbers::pi;
  prof.min_kappa = 0;
  for (std::int64_t m = 1; m <= (n - 1) / 2; ++m) {
    double k = 0;
    for (std::int64_t x = 0; x < n; ++x) {
      k += prof.f[static_cast<std::size_t>(x)].to_double() * std::cos(two_pi * static_cast<double>(m * x % n) / static_cast<double>(n));
    }
    k *= 2.0 / static_cast<double>(n);
    prof.kappa.push_back(k);
    prof.min_kappa = m == 1 ? k : std::min(prof.min_kappa, k);
  }
  for (std::int64_t x = 0; x < n; ++x) {
    double v = prof.constant.to_double();
    for (std::int64_t m = 1; m <= (n - 1) / 2; ++m) {
      v += prof.kappa[static_cast<std::size_t>(m - 1)] *
           std::cos(two_pi * static_cast<double>(m * x % n) / static_cast<double>(n));
    }
    prof.reconstruction_error = std::max(prof.reconstruction_error, std::fabs(v - prof.f[static_cast<std::size_t>(x)].to_double()));
  }
  prof.ok = prof.min_kappa >= -1e-9 && prof.reconstruction_error <= 1e-9;
  return prof;
}

struct FourierOptions {
  double width = 1e-7;  // bisection stops below this interval length
};

struct FourierReport {
  Rational base_bound;
  double augmented_bound = 0;
  double gap = 0;       // base - augmented
  std::string status;   // "ok", "base-feasible", or a failure description
  int feasibility_solves = 0;
  bool rigorous = false;
};

namespace detail {

/// Feasibility of the augmented system at candidate density delta0.
inline LpStatus augmented_feasible(const LinearProgram& lp, const WitnessSet& x, std::int64_t p, double delta0) {
  const std::size_t na = lp.num_cols();
  const std::size_t nk = static_cast<std::size_t>((p - 1) / 2);
  const std::size_t cols = na + nk;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  auto row = [&] { return std::vector<double>(cols, 0.0); };

  for (const auto& r : lp.rows) {
    auto v = row();
    for (std::size_t j = 0; j < na; ++j) v[j] = r[j];
    a.push_back(std::move(v));
    b.push_back(0.0);
  }
  {
    auto v = row();
    for (std::size_t j = 0; j < na; ++j) v[j] = 1.0;
    a.push_back(std::move(v));
    b.push_back(1.0);
  }
  {
    auto v = row();
    for (std::size_t j = 0; j < na; ++j) v[j] = lp.objective[j];
    a.push_back(std::move(v));
    b.push_back(delta0);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      auto v = row();
      const IndexMask pair = (IndexMask{1} << i) | (IndexMask{1} << j);
      for (std::size_t c = 0; c < na; ++c) v[c] = (lp.atoms[c].mask & pair) == pair ? 1.0 : 0.0;
      const std::int64_t diff = floor_mod(x[i] - x[j], p);
      for (std::size_t m = 1; m <= nk; ++m) {
        v[na + m - 1] = -std::cos(two_pi * static_cast<double>(static_cast<std::int64_t>(m) * diff % p) / static_cast<double>(p));
      }
      a.push_back(std::move(v));
      b.push_back(delta0 * delta0);
    }
  }
  std::vector<double> c(cols, 0.0);
  return solve_standard_form(a, b, c, /*feasibility_only=*/true).status;
}

}  // namespace detail

/// Supremum of delta0 for which the Fourier-augmented system is feasible,
/// found by bisection on [0, base bound]. Exploratory, not a proof.
inline FourierReport fourier_bound(const WitnessSet& x, const DilateEquation& eq, std::int64_t d, std::int64_t p,
                                   const FourierOptions& opts = {}) {
  if (!is_prime(p) || p == 2) throw Error("fourier bound needs an odd prime");
  LpProblem prob{x, eq, d, ModeSpec::modular(p), x[0]};
  auto lp = build_lp(prob);
  FourierReport rep;
  rep.base_bound = simplex_max(lp).value;
  const double base = rep.base_bound.to_double();

  auto feasible = [&](double delta0, LpStatus* st) {
    ++rep.feasibility_solves;
    *st = detail::augmented_feasible(lp, x, p, delta0);
    return *st == LpStatus::Optimal;
  };
  LpStatus st{};
  if (feasible(base, &st)) {
    rep.augmented_bound = base;
    rep.status = "base-feasible";
    return rep;
  }
  if (st != LpStatus::Infeasible) {
    rep.status = std::string("numerical failure: ") + to_string(st);
    rep.augmented_bound = base;
    return rep;
  }
  if (!feasible(0.0, &st)) {
    rep.status = "augmented system infeasible at 0";
    return rep;
  }
  double lo = 0.0, hi = base;
  while (hi - lo > opts.width) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid, &st)) {
      lo = mid;
    } else {
      if (st != LpStatus::Infeasible) {
        rep.status = std::string("numerical failure: ") + to_string(st);
        break;
      }
      hi = mid;
    }
  }
  rep.augmented_bound = lo;
  rep.gap = base - lo;
  if (rep.status.empty()) rep.status = "ok";
  return rep;
}

inline nlohmann::ordered_json fourier_json(const FourierReport& r) {
  nlohmann::ordered_json j;
  j["base_bound"] = r.base_bound.str();
  j["augmented_bound"] = r.augmented_bound;
  j["gap"] = r.gap;
  j["status"] = r.status;
  j["rigorous"] = r.rigorous;
  return j;
}

}  // namespace dilates
