#pragma once

// Certificate verifier. Deliberately self-contained: it rebuilds forbidden
// sets, atoms and congruence rows from the certificate with its own loops
// and never solves a linear program.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dilates/certificate.hpp"

namespace dilates {

struct VerificationReport {
  bool accepted = false;
  std::size_t atom_count = 0;
  std::optional<Rational> min_slack;
  std::vector<Rational> slack;  // y^T C - q e + r 1, one per atom (size-then-index order)
  std::vector<std::uint64_t> atom_masks;
  std::string applicability;
  std::vector<std::int64_t> excluded_moduli;  // integer mode: n <= span that collapse the witness
  std::string detail;
};

namespace verify_detail {

inline std::int64_t md(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

struct Context {
  bool modular = false;
  std::int64_t n = 0;
  std::vector<std::int64_t> x;
  std::vector<std::uint64_t> forbidden;  // index sets, not minimized

  std::int64_t norm(std::int64_t v) const { return modular ? md(v, n) : v; }

  bool vacuous(std::uint64_t s) const {
    for (auto f : forbidden) {
      if ((f & s) == f) return true;
    }
    return false;
  }

  /// Index mask of the listed elements, or nullopt when one is missing or repeated.
  std::optional<std::uint64_t> mask_of(const std::vector<std::int64_t>& elems) const {
    std::uint64_t m = 0;
    for (auto e : elems) {
      auto it = std::find(x.begin(), x.end(), e);
      if (it == x.end()) return std::nullopt;
      auto bit = std::uint64_t{1} << (it - x.begin());
      if (m & bit) return std::nullopt;
      m |= bit;
    }
    return m;
  }
};

}  // namespace verify_detail

/// Accepts iff every structural check passes and y^T C - q e + r 1 >= 0 on
/// every atom. Never throws.
inline VerificationReport verify_certificate(const Certificate& cert) {
  VerificationReport rep;
  auto reject = [&](std::string why) {
    rep.accepted = false;
    rep.detail = std::move(why);
    return rep;
  };
  try {
    using verify_detail::Context;
    if (cert.version != kCertificateVersion) return reject("unsupported version");
    Context ctx;
    if (cert.mode == "modular") {
      if (!cert.modulus || *cert.modulus < 1) return reject("modular certificate without a positive modulus");
      ctx.modular = true;
      ctx.n = *cert.modulus;
    } else if (cert.mode != "integer") {
      return reject("unknown mode '" + cert.mode + "'");
    }
    if (cert.coeffs.size() < 2) return reject("need at least two coefficients");
    for (auto c : cert.coeffs) {
      if (c == 0) return reject("zero coefficient");
      if (c > (std::int64_t{1} << 40) || c < -(std::int64_t{1} << 40)) return reject("coefficient out of range");
    }
    if (cert.witness.empty()) return reject("empty witness");
    if (cert.witness.size() > 25) return reject("witness larger than 25 elements");
    for (std::size_t i = 0; i < cert.witness.size(); ++i) {
      if (cert.witness[i] < 0 || cert.witness[i] > (std::int64_t{1} << 40)) return reject("witness element out of range");
      if (i && cert.witness[i] <= cert.witness[i - 1]) return reject("witness not strictly increasing");
    }
    ctx.x = cert.witness;
    if (ctx.modular) {
      std::set<std::int64_t> residues;
      for (auto v : ctx.x) residues.insert(ctx.norm(v));
      if (residues.size() != ctx.x.size()) return reject("witness elements collide mod n");
    }
    const auto n = ctx.x.size();
    const int objective = static_cast<int>(std::find(ctx.x.begin(), ctx.x.end(), cert.objective) - ctx.x.begin());
    if (objective == static_cast<int>(n)) return reject("objective element not in witness");
    if (cert.bound_den <= 0) return reject("bound denominator must be positive");
    {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), cert.bound_num.get_mpz_t(), cert.bound_den.get_mpz_t());
      if (g != 1) return reject("bound not in lowest terms");
    }
    if (cert.dual.size() != cert.congruences.size()) return reject("dual length differs from congruence count");

    // Forbidden index sets by brute force over n^k tuples.
    const std::size_t k = cert.coeffs.size();
    double tuples = 1;
    for (std::size_t i = 0; i < k; ++i) tuples *= static_cast<double>(n);
    if (tuples > 2e8) return reject("witness/equation too large for the brute-force verifier");
    const std::int64_t target = ctx.norm(cert.d);
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      __int128 s = 0;
      for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(cert.coeffs[j]) * ctx.x[idx[j]];
      bool hit = ctx.modular ? static_cast<std::int64_t>(((s % ctx.n) + ctx.n) % ctx.n) == target
                             : s == static_cast<__int128>(target);
      if (hit) {
        std::uint64_t m = 0;
        for (auto i : idx) m |= std::uint64_t{1} << i;
        ctx.forbidden.push_back(m);
      }
      std::size_t p = 0;
      while (p < k && ++idx[p] == n) idx[p++] = 0;
      if (p == k) break;
    }

    // Atoms.
    std::vector<std::uint64_t> atoms;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      if (!ctx.vacuous(s)) atoms.push_back(s);
    }
    std::stable_sort(atoms.begin(), atoms.end(), [](std::uint64_t a, std::uint64_t b) {
      return __builtin_popcountll(a) < __builtin_popcountll(b);
    });
    rep.atom_count = atoms.size();
    rep.atom_masks = atoms;

    // Congruence rows.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    for (std::size_t i = 0; i < cert.congruences.size(); ++i) {
      const auto& g = cert.congruences[i];
      const std::string at = "congruence " + std::to_string(i + 1) + ": ";
      if (g.lhs.empty() || g.lhs.size() != g.rhs.size()) return reject(at + "sides must be nonempty and equal in size");
      auto lm = ctx.mask_of(g.lhs);
      auto rm = ctx.mask_of(g.rhs);
      if (!lm || !rm) return reject(at + "element outside the witness or repeated");
      if (*lm == *rm) return reject(at + "both sides are the same subset");
      std::vector<std::int64_t> moved, target_set;
      for (auto v : g.lhs) moved.push_back(ctx.norm(v + g.shift));
      for (auto v : g.rhs) target_set.push_back(ctx.norm(v));
      std::sort(moved.begin(), moved.end());
      std::sort(target_set.begin(), target_set.end());
      if (moved != target_set) return reject(at + "rhs is not lhs + shift");
      if (ctx.vacuous(*lm) || ctx.vacuous(*rm)) return reject(at + "vacuous subset");
      rows.emplace_back(*lm, *rm);
    }

    // Scale rational duals to integers.
    BigInt scale = 1;
    for (const auto& y : cert.dual) {
      BigInt den = y.den();
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<BigInt> yi;
    for (const auto& y : cert.dual) yi.push_back(y.num() * (scale / y.den()));
    const BigInt q = cert.bound_den * scale;
    const BigInt r = cert.bound_num * scale;

    std::optional<BigInt> worst;
    std::size_t worst_at = 0;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const auto s = atoms[a];
      BigInt v = r;
      if (s >> objective & 1U) v -= q;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        int coef = static_cast<int>((rows[i].first & s) == rows[i].first) -
                   static_cast<int>((rows[i].second & s) == rows[i].second);
        if (coef > 0) v += yi[i];
        if (coef < 0) v -= yi[i];
      }
      if (!worst || v < *worst) {
        worst = v;
        worst_at = a;
      }
      rep.slack.push_back(Rational(v, scale));
    }
    rep.min_slack = Rational(*worst, scale);

    if (ctx.modular) {
      rep.applicability = "modulus n = " + std::to_string(ctx.n) + " only";
    } else {
      std::set<std::int64_t> diffs;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) diffs.insert(ctx.x[j] - ctx.x[i]);
      }
      const std::int64_t span = ctx.x.back() - ctx.x.front();
      for (std::int64_t m = 1; m <= span; ++m) {
        if (std::any_of(diffs.begin(), diffs.end(), [m](std::int64_t dd) { return dd % m == 0; })) {
          rep.excluded_moduli.push_back(m);
        }
      }
      rep.applicability = "every modulus n under which the witness stays injective (all n >= " +
                          std::to_string(span + 1) + ")";
    }

    if (*worst < 0) {
      std::string at;
      for (std::size_t i = 0; i < n; ++i) {
        if (atoms[worst_at] >> i & 1U) at += (at.empty() ? "" : ",") + std::to_string(ctx.x[i]);
      }
      return reject("negative slack " + rep.min_slack->str() + " at atom {" + at + "}");
    }
    rep.accepted = true;
    rep.detail = "every A in Z_n with " + std::to_string(cert.d) + " missing from the dilate sumset has density <= " +
                 cert.bound().str();
    return rep;
  } catch (const std::exception& e) {
    return reject(std::string("internal error: ") + e.what());
  }
}

}  // namespace dilates
