#pragma once

#include <string>
#include <vector>

#include "dilates/certificate.hpp"
#include "dilates/lp_build.hpp"
#include "dilates/lp_solve.hpp"
#include "dilates/verify.hpp"

namespace dilates {

/// Bundles a program's rows with a dual and bound. Refuses to return a
/// certificate that the verifier rejects.
inline Certificate make_certificate(const LpProblem& p, const LinearProgram& lp, std::span<const Rational> dual,
                                    const Rational& bound, std::string note = {}) {
  if (dual.size() != lp.num_rows()) throw Error("dual length differs from the row count");
  Certificate c;
  c.mode = p.mode.name();
  if (p.mode.is_modular()) c.modulus = p.mode.modulus();
  c.coeffs.assign(p.eq.coeffs().begin(), p.eq.coeffs().end());
  c.d = p.d;
  c.witness.assign(p.witness.elements().begin(), p.witness.elements().end());
  c.objective = p.objective_element;
  for (const auto& g : lp.congruences) {
    c.congruences.push_back(CertCongruence{p.witness.subset(g.lhs), p.witness.subset(g.rhs), g.shift});
  }
  c.dual.assign(dual.begin(), dual.end());
  c.bound_num = bound.num();
  c.bound_den = bound.den();
  c.note = std::move(note);
  auto rep = verify_certificate(c);
  if (!rep.accepted) throw Error("refusing to emit a certificate the verifier rejects: " + rep.detail);
  return c;
}

struct BoundOptions {
  bool prune = true;
  PruneOptions prune_opts;
  AtomEnumeration atoms = AtomEnumeration::Dense;
};

struct BoundOutcome {
  std::size_t atoms = 0;
  std::size_t full_rows = 0;
  Rational value;
  std::vector<std::size_t> kept_rows;  // indices into the full congruence list
  IntegerizeResult integerized;
  bool used_solver_dual = false;       // coordinate-wise scheme failed; fell back
  Certificate certificate;
  VerificationReport report;
};

/// build -> solve -> prune -> integerize -> certify -> verify.
inline BoundOutcome run_bound_pipeline(const LpProblem& p, const BoundOptions& opts = {}) {
  BoundOutcome out;
  auto lp = build_lp(p, opts.atoms);
  out.atoms = lp.num_cols();
  out.full_rows = lp.num_rows();
  auto sol = simplex_max(lp);
  out.value = sol.value;

  if (opts.prune && lp.num_rows() > 0) {
    out.kept_rows = prune_congruences(lp, sol.value, opts.prune_opts).rows;
  } else {
    for (std::size_t r = 0; r < lp.num_rows(); ++r) out.kept_rows.push_back(r);
  }
  auto reduced = lp.with_rows(out.kept_rows);
  out.integerized = integerize_dual(reduced, sol.value);
  std::vector<Rational> y = out.integerized.y;
  if (!out.integerized.complete) {
    y = scaled_dual(simplex_max(reduced));
    out.used_solver_dual = true;
  }
  std::string note = p.mode.is_modular()
                         ? "valid for Z_" + std::to_string(p.mode.modulus())
                         : "valid for every Z_n in which the witness is injective";
  out.certificate = make_certificate(p, reduced, y, sol.value, note);
  out.report = verify_certificate(out.certificate);
  return out;
}

}  // namespace dilates
