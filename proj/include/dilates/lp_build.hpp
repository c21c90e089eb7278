#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilates/core.hpp"

namespace dilates {

/// One forbidden index tuple (i_1..i_k), zero-based, with sum l_j x_{i_j} = d.
struct ForbiddenTuple {
  std::vector<int> indices;
  IndexMask mask = 0;  // index set; repetition collapses
};

/// A subset S of witness indices carrying one atomic-density variable.
struct Atom {
  IndexMask mask = 0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// elements(rhs) = elements(lhs) + shift (mod n in modular mode).
struct Congruence {
  IndexMask lhs = 0;
  IndexMask rhs = 0;
  std::int64_t shift = 0;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Indicator-vector order: compares (b_1, ..., b_n) lexicographically, x_1 first.
inline bool indicator_less(IndexMask a, IndexMask b) {
  if (a == b) return false;
  int lowest_diff = std::countr_zero(a ^ b);
  return (b >> lowest_diff & 1U) != 0;
}

/// Size first, then indicator order.
inline bool atom_order_less(IndexMask a, IndexMask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : indicator_less(a, b);
}

/// All index tuples with sum l_j x_{i_j} = d, deduplicated up to permutations
/// among positions that share a coefficient.
inline std::vector<ForbiddenTuple> forbidden_tuples(const WitnessSet& x, const DilateEquation& eq, std::int64_t d,
                                                    const ModeSpec& mode) {
  if (!x.injective_in(mode)) {
    throw Error("witness " + x.str() + " is not injective mod " + std::to_string(mode.modulus()));
  }
  const auto coeffs = eq.coeffs();
  std::map<std::vector<int>, ForbiddenTuple> seen;
  for_each_solution(x.elements(), eq, d, mode, [&](std::span<const int> idx) {
    std::vector<int> canon(idx.begin(), idx.end());
    // sort indices inside each group of equal coefficients
    for (std::size_t i = 0; i < canon.size(); ++i) {
      for (std::size_t j = i + 1; j < canon.size(); ++j) {
        if (coeffs[i] == coeffs[j] && canon[j] < canon[i]) std::swap(canon[i], canon[j]);
      }
    }
    auto [it, inserted] = seen.try_emplace(canon);
    if (inserted) it->second = ForbiddenTuple{canon, tuple_mask(canon)};
  });
  std::vector<ForbiddenTuple> out;
  out.reserve(seen.size());
  for (auto& [key, t] : seen) out.push_back(std::move(t));
  return out;
}

/// Minimal forbidden index sets; a subset is vacuous iff it contains one.
inline std::vector<IndexMask> forbidden_masks(std::span<const ForbiddenTuple> tuples) {
  std::vector<IndexMask> m;
  m.reserve(tuples.size());
  for (const auto& t : tuples) m.push_back(t.mask);
  return minimal_masks(std::move(m));
}

enum class AtomEnumeration { Dense, Dfs };

inline constexpr std::size_t kDenseAtomLimit = 25;

/// All S containing no forbidden index set, ordered size-then-indicator.
inline std::vector<Atom> enumerate_atoms(const WitnessSet& x, std::span<const ForbiddenTuple> tuples,
                                         AtomEnumeration how = AtomEnumeration::Dense) {
  const auto n = x.size();
  const auto forb = forbidden_masks(tuples);
  std::vector<IndexMask> masks;
  auto vacuous = [&](IndexMask s) {
    return std::any_of(forb.begin(), forb.end(), [s](IndexMask f) { return (f & s) == f; });
  };
  if (how == AtomEnumeration::Dense) {
    if (n > kDenseAtomLimit) {
      throw Error("witness has " + std::to_string(n) + " elements; dense atom enumeration stops at 25 (use DFS mode)");
    }
    for (IndexMask s = 0; s < (IndexMask{1} << n); ++s) {
      if (!vacuous(s)) masks.push_back(s);
    }
  } else {
    // Non-vacuous sets are closed under taking subsets: grow by adding higher indices only.
    auto rec = [&](auto&& self, IndexMask s, std::size_t next) -> void {
      masks.push_back(s);
      for (std::size_t i = next; i < n; ++i) {
        IndexMask t = s | IndexMask{1} << i;
        if (!vacuous(t)) self(self, t, i + 1);
      }
    };
    rec(rec, 0, 0);
  }
  std::sort(masks.begin(), masks.end(), atom_order_less);
  std::vector<Atom> atoms;
  atoms.reserve(masks.size());
  for (auto m : masks) atoms.push_back(Atom{m});
  return atoms;
}

namespace detail {

/// Translation-class key of a subset: offsets from an anchor element.
inline std::vector<std::int64_t> translation_key(const std::vector<std::int64_t>& elems, const ModeSpec& mode) {
  if (!mode.is_modular()) {
    std::vector<std::int64_t> key;
    for (auto e : elems) key.push_back(e - elems.front());
    return key;
  }
  std::vector<std::int64_t> best;
  for (auto anchor : elems) {
    std::vector<std::int64_t> key;
    for (auto e : elems) key.push_back(mode.reduce(e - anchor));
    std::sort(key.begin(), key.end());
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

/// t with elements(to) = elements(from) + t; in modular mode t is in [1, n).
inline std::int64_t translation_between(const std::vector<std::int64_t>& from, const std::vector<std::int64_t>& to,
                                        const ModeSpec& mode) {
  if (!mode.is_modular()) return to.front() - from.front();
  std::vector<std::int64_t> target(to);
  for (auto& v : target) v = mode.reduce(v);
  std::sort(target.begin(), target.end());
  for (auto z : target) {
    auto t = mode.reduce(z - from.front());
    std::vector<std::int64_t> moved;
    for (auto y : from) moved.push_back(mode.reduce(y + t));
    std::sort(moved.begin(), moved.end());
    if (moved == target) return t;
  }
  throw Error("subsets are not translates");
}

}  // namespace detail

/// Groups the nonempty non-vacuous subsets (exactly the nonempty atoms) into
/// translation classes and pairs each member with the class representative.
/// Classes and members follow indicator order; the representative comes first,
/// which over Z is the translate with the largest elements.
inline std::vector<Congruence> enumerate_congruences(const WitnessSet& x, std::span<const Atom> atoms,
                                                     const ModeSpec& mode) {
  std::map<std::vector<std::int64_t>, std::vector<IndexMask>> classes;
  for (const auto& a : atoms) {
    if (a.mask == 0) continue;
    classes[detail::translation_key(x.subset(a.mask), mode)].push_back(a.mask);
  }
  std::vector<std::vector<IndexMask>> groups;
  for (auto& [key, members] : classes) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), indicator_less);
    groups.push_back(std::move(members));
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return indicator_less(a.front(), b.front()); });
  std::vector<Congruence> out;
  for (const auto& g : groups) {
    auto rep = x.subset(g.front());
    for (std::size_t i = 1; i < g.size(); ++i) {
      out.push_back(Congruence{g.front(), g[i], detail::translation_between(rep, x.subset(g[i]), mode)});
    }
  }
  return out;
}

/// max <e, x> subject to x >= 0, <1, x> = 1, C x = 0.
struct LinearProgram {
  std::vector<Atom> atoms;
  std::vector<Congruence> congruences;          // one per row of C
  std::vector<std::vector<int>> rows;           // entries in {-1, 0, 1}
  std::vector<int> objective;                   // e_S = 1 iff objective index in S
  int objective_index = 0;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return atoms.size(); }

  /// Same program restricted to the listed rows, in the listed order.
  LinearProgram with_rows(std::span<const std::size_t> keep) const {
    LinearProgram lp;
    lp.atoms = atoms;
    lp.objective = objective;
    lp.objective_index = objective_index;
    for (auto r : keep) {
      lp.congruences.push_back(congruences.at(r));
      lp.rows.push_back(rows.at(r));
    }
    return lp;
  }
};

/// Row r_Y - r_Z over the atom columns, (r_Y)_S = 1 iff Y is inside S.
inline std::vector<int> congruence_row(std::span<const Atom> atoms, const Congruence& c) {
  std::vector<int> row(atoms.size());
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    auto s = atoms[j].mask;
    row[j] = static_cast<int>((c.lhs & s) == c.lhs) - static_cast<int>((c.rhs & s) == c.rhs);
  }
  return row;
}

inline LinearProgram assemble_lp(std::vector<Atom> atoms, std::vector<Congruence> congruences,
                                 const WitnessSet& x, std::int64_t objective_element) {
  int idx = x.index_of(objective_element);
  if (idx < 0) throw Error("objective element " + std::to_string(objective_element) + " is not in the witness");
  LinearProgram lp;
  lp.objective_index = idx;
  for (const auto& a : atoms) lp.objective.push_back(static_cast<int>(a.mask >> idx & 1U));
  for (const auto& c : congruences) lp.rows.push_back(congruence_row(atoms, c));
  lp.atoms = std::move(atoms);
  lp.congruences = std::move(congruences);
  return lp;
}

/// Everything that defines one atomic-density program.
struct LpProblem {
  WitnessSet witness{std::vector<std::int64_t>{0}};
  DilateEquation eq = DilateEquation::canonical();
  std::int64_t d = 0;
  ModeSpec mode = ModeSpec::integer();
  std::int64_t objective_element = 0;
};

inline LinearProgram build_lp(const LpProblem& p, AtomEnumeration how = AtomEnumeration::Dense) {
  auto tuples = forbidden_tuples(p.witness, p.eq, p.d, p.mode);
  auto atoms = enumerate_atoms(p.witness, tuples, how);
  auto congs = enumerate_congruences(p.witness, atoms, p.mode);
  return assemble_lp(std::move(atoms), std::move(congs), p.witness, p.objective_element);
}

// ---------------------------------------------------------------------------
// LP dump: JSON metadata plus a plain-text matrix listing.

inline std::string subset_label(const WitnessSet& x, IndexMask m) {
  return "{" + join(x.subset(m), ", ") + "}";
}

inline nlohmann::ordered_json lp_metadata_json(const LpProblem& p, const LinearProgram& lp) {
  nlohmann::ordered_json j;
  j["witness"] = std::vector<std::int64_t>(p.witness.elements().begin(), p.witness.elements().end());
  j["d"] = p.d;
  j["coeffs"] = std::vector<std::int64_t>(p.eq.coeffs().begin(), p.eq.coeffs().end());
  j["mode"] = p.mode.name();
  if (p.mode.is_modular()) j["modulus"] = p.mode.modulus();
  j["objective"] = p.objective_element;
  j["rows"] = lp.num_rows();
  j["cols"] = lp.num_cols();
  auto& atoms = j["atoms"] = nlohmann::ordered_json::array();
  for (const auto& a : lp.atoms) atoms.push_back(p.witness.subset(a.mask));
  return j;
}

/// One line per row: label, then space-separated entries in {-1, 0, 1}.
/// The first line is the objective row labelled "e".
inline std::string lp_matrix_text(const WitnessSet& x, const LinearProgram& lp) {
  std::ostringstream os;
  os << "e:";
  for (int v : lp.objective) os << ' ' << v;
  os << '\n';
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const auto& c = lp.congruences[r];
    os << subset_label(x, c.lhs) << " ~ " << subset_label(x, c.rhs) << ':';
    for (int v : lp.rows[r]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace dilates
