#pragma once

// Reproduction checks with pinned tolerances and time limits. Shared by the
// acceptance test binary and `dilates repro`.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dilates/dilates.hpp"

namespace dilates::acceptance {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

inline const std::vector<std::int64_t>& flagship_witness() {
  static const std::vector<std::int64_t> x{0, 2, 3, 4, 7, 8, 9, 10};
  return x;
}

inline LpProblem flagship_problem() {
  return LpProblem{WitnessSet(flagship_witness()), DilateEquation::canonical(), 6, ModeSpec::integer(), 0};
}

/// The 22-row certificate with its published integer dual.
inline Certificate published_certificate() {
  static const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> rows{
      {{10}, {9}},           {{10}, {8}},         {{10}, {7}},         {{10}, {4}},
      {{10}, {3}},           {{10}, {2}},         {{10}, {0}},         {{9, 10}, {8, 9}},
      {{9, 10}, {7, 8}},     {{9, 10}, {3, 4}},   {{9, 10}, {2, 3}},   {{8, 10}, {7, 9}},
      {{8, 10}, {2, 4}},     {{8, 10}, {0, 2}},   {{8, 9, 10}, {7, 8, 9}}, {{8, 9, 10}, {2, 3, 4}},
      {{4, 9}, {3, 8}},      {{4, 8}, {3, 7}},    {{4, 8, 9}, {3, 7, 8}},  {{3, 10}, {2, 9}},
      {{3, 8, 10}, {2, 7, 9}}, {{2, 4, 9}, {0, 2, 7}}};
  static const std::vector<std::int64_t> y{2, 2, 2, 2, -2, -1, -7, -3, -2, 2, 5, -2, 1, 3, 2, -5, 2, 2, -3, -2, 2, -2};
  Certificate c;
  c.mode = "integer";
  c.coeffs = {1, 1, -2};
  c.d = 6;
  c.witness = flagship_witness();
  c.objective = 0;
  for (const auto& [l, r] : rows) c.congruences.push_back(CertCongruence{l, r, r.front() - l.front()});
  for (auto v : y) c.dual.emplace_back(v);
  c.bound_num = 2;
  c.bound_den = 7;
  c.note = "valid for every Z_n in which the witness is injective";
  return c;
}

namespace detail {

inline CriterionResult timed(std::string id, std::string name, double limit,
                             const std::function<bool(std::ostringstream&)>& body) {
  CriterionResult r{std::move(id), std::move(name), false, 0, limit, {}};
  std::ostringstream os;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.passed = body(os);
  } catch (const std::exception& e) {
    os << "exception: " << e.what();
    r.passed = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds >= limit) {
    os << " [over time limit " << limit << " s]";
    r.passed = false;
  }
  r.detail = os.str();
  return r;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline ResidueSet random_set(std::mt19937_64& rng, std::int64_t p) {
  ResidueSet a(p);
  const auto percent = 15 + draw(rng, 50);
  for (std::int64_t v = 0; v < p; ++v) {
    if (draw(rng, 100) < percent) a.insert(v);
  }
  if (a.empty()) a.insert(static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(p))));
  return a;
}

/// Random maximal set with d missing from its dilate sumset.
inline ResidueSet greedy_avoiding_set(std::mt19937_64& rng, std::int64_t p, const DilateEquation& eq, std::int64_t d) {
  std::vector<std::int64_t> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw(rng, i)]);
  ResidueSet a(p);
  for (auto v : order) {
    a.insert(v);
    if (!excludes(eq, a, d)) a.erase(v);
  }
  return a;
}

inline std::vector<std::int64_t> reduced_witness(std::int64_t p) {
  std::vector<std::int64_t> x;
  for (auto v : flagship_witness()) x.push_back(floor_mod(v, p));
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

/// Verdict for a certificate recomputed through the program builder rather
/// than the verifier, used to cross-check mutations.
inline bool direct_verdict(const Certificate& c) {
  if (c.bound_den <= 0) return false;
  {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.bound_num.get_mpz_t(), c.bound_den.get_mpz_t());
    if (g != 1) return false;
  }
  WitnessSet x(c.witness);
  const ModeSpec mode = c.mode == "modular" ? ModeSpec::modular(*c.modulus) : ModeSpec::integer();
  DilateEquation eq(c.coeffs);
  auto tuples = forbidden_tuples(x, eq, c.d, mode);
  auto forb = forbidden_masks(tuples);
  auto vacuous = [&](IndexMask s) {
    return std::any_of(forb.begin(), forb.end(), [s](IndexMask f) { return (f & s) == f; });
  };
  auto atoms = enumerate_atoms(x, tuples);
  std::vector<Congruence> congs;
  for (const auto& g : c.congruences) {
    if (g.lhs.empty() || g.lhs.size() != g.rhs.size()) return false;
    IndexMask lm = 0, rm = 0;
    std::vector<std::int64_t> moved, target;
    for (auto v : g.lhs) {
      int i = x.index_of(v);
      if (i < 0 || (lm >> i & 1U)) return false;
      lm |= IndexMask{1} << i;
      moved.push_back(mode.reduce(v + g.shift));
    }
    for (auto v : g.rhs) {
      int i = x.index_of(v);
      if (i < 0 || (rm >> i & 1U)) return false;
      rm |= IndexMask{1} << i;
      target.push_back(mode.reduce(v));
    }
    std::sort(moved.begin(), moved.end());
    std::sort(target.begin(), target.end());
    if (lm == rm || moved != target || vacuous(lm) || vacuous(rm)) return false;
    congs.push_back(Congruence{lm, rm, g.shift});
  }
  auto lp = assemble_lp(atoms, congs, x, c.objective);
  auto slack = dual_slack(lp, c.dual, c.bound());
  return std::all_of(slack.begin(), slack.end(), [](const Rational& s) { return s.sign() >= 0; });
}

}  // namespace detail

inline CriterionResult criterion_1() {
  return detail::timed("1", "flagship bound: 53 atoms, optimum 2/7, certified", 10.0, [](std::ostringstream& os) {
    auto out = run_bound_pipeline(flagship_problem());
    os << "atoms=" << out.atoms << " optimum=" << out.value << " kept_rows=" << out.kept_rows.size()
       << " certificate=" << (out.report.accepted ? "accepted" : "rejected");
    return out.atoms == 53 && out.value == rational(2, 7) && out.report.accepted &&
           out.certificate.bound() == rational(2, 7);
  });
}

inline CriterionResult criterion_2() {
  return detail::timed("2", "published 22-row dual verifies 2/7", 1.0, [](std::ostringstream& os) {
    auto rep = verify_certificate(published_certificate());
    bool integral = std::all_of(rep.slack.begin(), rep.slack.end(), [](const Rational& s) { return s.is_integer(); });
    os << "verdict=" << (rep.accepted ? "accepted" : "rejected") << " atoms=" << rep.atom_count
       << " min_slack=" << (rep.min_slack ? rep.min_slack->str() : "-") << " " << rep.detail;
    return rep.accepted && rep.atom_count == 53 && rep.slack.size() == 53 && integral && rep.min_slack &&
           rep.min_slack->sign() >= 0;
  });
}

inline CriterionResult criterion_3() {
  return detail::timed("3", "pruning keeps at most 22 rows at optimum 2/7", 60.0, [](std::ostringstream& os) {
    auto lp = build_lp(flagship_problem());
    PruneOptions opts;
    opts.seed = 1;
    opts.restarts = 50;
    auto pr = prune_congruences(lp, rational(2, 7), opts);
    auto value = simplex_max(lp.with_rows(pr.rows)).value;
    os << "full_rows=" << lp.num_rows() << " kept=" << pr.rows.size() << " value=" << value
       << " lp_solves=" << pr.lp_solves;
    return pr.rows.size() <= 22 && value == rational(2, 7);
  });
}

inline CriterionResult criterion_4() {
  return detail::timed("4", "M(p) = floor((p+1)/4) for p in {5,...,23}", 300.0, [](std::ostringstream& os) {
    bool ok = true;
    for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23}) {
      auto r = max_excluding_set(p, DilateEquation::canonical(), 1);
      os << "p=" << p << ":" << r.optimum << (r.proved ? "" : "?") << " ";
      ok = ok && r.proved && r.optimum == (p + 1) / 4;
    }
    return ok;
  });
}

inline CriterionResult criterion_5() {
  return detail::timed("5", "largest 6-avoiding trace on {0..41} is 12", 60.0, [](std::ostringstream& os) {
    auto r = max_avoiding_subset(AvoidanceInstance::interval(0, 41, DilateEquation::canonical(), 6));
    auto density = density_bound_from_delta(r.optimum, 42);
    os << "delta=" << r.optimum << " proved=" << (r.proved ? "true" : "false") << " nodes=" << r.nodes
       << " density=" << density << " witness={" << join(r.witness) << "}";
    return r.optimum == 12 && r.proved && density == rational(2, 7);
  });
}

inline CriterionResult criterion_6() {
  return detail::timed("6", "avoiding-subset counts 6, 70, 120", 1.0, [](std::ostringstream& os) {
    const std::vector<int> diffs{1, 2};
    auto c5 = count_avoiding_subsets(14, 5, diffs);
    auto c4 = count_avoiding_subsets(14, 4, diffs);
    auto c3 = count_avoiding_subsets(14, 3, diffs);
    os << "k=5:" << c5 << " k=4:" << c4 << " k=3:" << c3;
    return c5 == 6 && c4 == 70 && c3 == 120;
  });
}

inline CriterionResult criterion_7(int which) {
  const bool first = which == 0;
  const std::int64_t p = first ? 31 : 23;
  const std::vector<std::int64_t> x = first ? std::vector<std::int64_t>{0, 1, 2, 3, 10, 11, 12, 20, 21}
                                            : std::vector<std::int64_t>{0, 1, 2, 3, 8, 9, 10, 17, 19};
  return detail::timed(first ? "7a" : "7b", "d=2 witness mod " + std::to_string(p) + " gives at most 2/7", 30.0,
                       [&](std::ostringstream& os) {
                         LpProblem prob{WitnessSet(x), DilateEquation::canonical(), 2, ModeSpec::modular(p), 0};
                         auto lp = build_lp(prob);
                         auto value = simplex_max(lp).value;
                         os << "atoms=" << lp.num_cols() << " rows=" << lp.num_rows() << " optimum=" << value;
                         return value <= rational(2, 7);
                       });
}

inline CriterionResult criterion_8() {
  return detail::timed("8", "six shift identities for (10,12,15,20,30,-87)", 1.0, [](std::ostringstream& os) {
    DilateEquation eq({10, 12, 15, 20, 30, -87});
    int found = 0;
    for (std::int64_t gap = 1; gap <= 6; ++gap) {
      auto id = find_shift_identity(eq, gap, 60);
      if (id && id->verify(eq)) {
        ++found;
        os << id->str(eq) << "; ";
      } else {
        os << "gap " << gap << " missing; ";
      }
    }
    return found == 6;
  });
}

/// Empirical atomic densities satisfy normalization, the objective identity
/// and every congruence; forbidden atoms vanish when d is excluded.
inline CriterionResult criterion_9a() {
  return detail::timed("9a", "empirical densities satisfy the program's constraints", 120.0, [](std::ostringstream& os) {
    std::mt19937_64 rng(20240901);
    const std::vector<std::int64_t> primes{11, 13, 17, 19, 23, 29, 31};
    const auto eq = DilateEquation::canonical();
    int failures = 0, excluded_cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = primes[detail::draw(rng, primes.size())];
      const auto d = floor_mod(6, p);
      ResidueSet a = trial % 2 == 0 ? detail::random_set(rng, p) : detail::greedy_avoiding_set(rng, p, eq, d);
      WitnessSet x(detail::reduced_witness(p));
      auto dens = empirical_atomic_densities(a, x);
      LpProblem prob{x, eq, d, ModeSpec::modular(p), x[0]};
      auto tuples = forbidden_tuples(x, eq, d, prob.mode);
      auto forb = forbidden_masks(tuples);
      auto lp = build_lp(prob);

      Rational total(0);
      for (const auto& [m, v] : dens) total += v;
      bool ok = total == Rational(1);
      ok = ok && aggregate(dens, IndexMask{1}) == rational(a.size(), p);
      for (const auto& g : lp.congruences) ok = ok && aggregate(dens, g.lhs) == aggregate(dens, g.rhs);
      if (excludes(eq, a, d)) {
        ++excluded_cases;
        for (const auto& [m, v] : dens) {
          for (auto f : forb) ok = ok && !((f & m) == f && v.sign() != 0);
        }
        // The density vector is then a feasible point of the program.
        std::vector<Rational> col(lp.num_cols(), Rational(0));
        for (std::size_t j = 0; j < lp.num_cols(); ++j) {
          if (auto it = dens.find(lp.atoms[j].mask); it != dens.end()) col[j] = it->second;
        }
        for (const auto& row : lp.rows) {
          Rational acc(0);
          for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j]) acc += Rational(row[j]) * col[j];
          }
          ok = ok && acc.is_zero();
        }
      }
      if (!ok) ++failures;
    }
    os << "sets=200 excluded=" << excluded_cases << " failures=" << failures;
    return failures == 0 && excluded_cases > 0;
  });
}

inline CriterionResult criterion_9b() {
  return detail::timed("9b", "|A+A-2A| >= min(3|A|-2, p) on 1000 sets", 60.0, [](std::ostringstream& os) {
    std::mt19937_64 rng(7);
    const std::vector<std::int64_t> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    const auto eq = DilateEquation::canonical();
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto p = primes[detail::draw(rng, primes.size())];
      auto a = detail::random_set(rng, p);
      const auto s = dilate_sumset(eq, a).size();
      if (s < std::min<std::int64_t>(3 * a.size() - 2, p)) ++failures;
    }
    os << "sets=1000 failures=" << failures;
    return failures == 0;
  });
}

/// Single-entry mutations of the published certificate. The verifier's
/// verdict must agree with a recomputation through the program builder.
inline CriterionResult criterion_9c() {
  return detail::timed("9c", "verifier agrees with direct recomputation on 500 mutations", 60.0,
                       [](std::ostringstream& os) {
                         std::mt19937_64 rng(99);
                         const auto base = published_certificate();
                         int bad_accepts = 0, bad_rejects = 0, accepted = 0;
                         for (int trial = 0; trial < 500; ++trial) {
                           auto c = base;
                           const int delta = detail::draw(rng, 2) ? 1 : -1;
                           switch (trial % 4) {
                             case 0:
                             case 1: {
                               auto i = detail::draw(rng, c.dual.size());
                               c.dual[i] += Rational(delta);
                               break;
                             }
                             case 2: {
                               auto& g = c.congruences[detail::draw(rng, c.congruences.size())];
                               g.shift += delta;
                               // Half the time keep the row consistent by moving rhs along.
                               if (detail::draw(rng, 2)) {
                                 for (auto& v : g.rhs) v += delta;
                               }
                               break;
                             }
                             default:
                               c.bound_num += delta;
                               break;
                           }
                           const bool verdict = verify_certificate(c).accepted;
                           const bool direct = detail::direct_verdict(c);
                           accepted += verdict ? 1 : 0;
                           if (verdict && !direct) ++bad_accepts;
                           if (!verdict && direct) ++bad_rejects;
                         }
                         os << "mutations=500 accepted=" << accepted << " inconsistent_accepts=" << bad_accepts
                            << " inconsistent_rejects=" << bad_rejects;
                         return bad_accepts == 0 && bad_rejects == 0;
                       });
}

inline CriterionResult criterion_9d() {
  return detail::timed("9d", "program bound dominates exact maximum density for p <= 19", 120.0,
                       [](std::ostringstream& os) {
                         const auto eq = DilateEquation::canonical();
                         bool ok = true;
                         for (std::int64_t p : {5, 7, 11, 13, 17, 19}) {
                           const auto d = floor_mod(6, p);
                           WitnessSet x(detail::reduced_witness(p));
                           auto value = simplex_max(build_lp(LpProblem{x, eq, d, ModeSpec::modular(p), x[0]})).value;
                           auto brute = max_excluding_set(p, eq, d);
                           auto density = rational(brute.optimum, p);
                           os << "p=" << p << ": lp=" << value << " max=" << density << "; ";
                           ok = ok && brute.proved && density <= value;
                         }
                         return ok;
                       });
}

inline CriterionResult criterion_10() {
  return detail::timed("10", "Fourier-augmented bound never exceeds the base bound", 120.0, [](std::ostringstream& os) {
    constexpr double kTolerance = 1e-6;
    const auto eq = DilateEquation::canonical();
    bool ok = true;
    auto run = [&](const std::vector<std::int64_t>& x, std::int64_t p) {
      auto rep = fourier_bound(WitnessSet(x), eq, 6, p);
      const bool within = rep.augmented_bound <= rep.base_bound.to_double() + kTolerance;
      const bool numeric_ok = rep.status == "ok" || rep.status == "base-feasible";
      os << "X={" << join(x) << "} mod " << p << ": base=" << rep.base_bound << " augmented=" << rep.augmented_bound
         << " status=" << rep.status << (rep.gap <= kTolerance ? " (equal)" : " (strictly smaller)") << "; ";
      ok = ok && within && numeric_ok;
    };
    run(flagship_witness(), 43);
    run({0, 2, 3, 4}, 29);
    return ok;
  });
}

inline const std::vector<std::pair<std::string, std::function<CriterionResult()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<CriterionResult()>>> r{
      {"1", criterion_1},   {"2", criterion_2},   {"3", criterion_3},
      {"4", criterion_4},   {"5", criterion_5},   {"6", criterion_6},
      {"7a", [] { return criterion_7(0); }},      {"7b", [] { return criterion_7(1); }},
      {"8", criterion_8},   {"9a", criterion_9a}, {"9b", criterion_9b},
      {"9c", criterion_9c}, {"9d", criterion_9d}, {"10", criterion_10}};
  return r;
}

inline std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : registry()) out.push_back(fn());
  return out;
}

/// Checks whose id equals `prefix` or extends it with a letter ("7" runs 7a and 7b).
inline std::vector<CriterionResult> run_all_ids(const std::string& prefix) {
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : registry()) {
    if (id == prefix || (id.size() == prefix.size() + 1 && id.starts_with(prefix) && std::isalpha(id.back()))) {
      out.push_back(fn());
    }
  }
  return out;
}

}  // namespace dilates::acceptance
