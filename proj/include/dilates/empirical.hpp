#pragma once

#include <map>

#include "dilates/core.hpp"

namespace dilates {

/// Atomic densities of a concrete set: the fraction of translates y in Z_n
/// whose trace {i : y + x_i in A} on the witness equals each index set.
inline std::map<IndexMask, Rational> empirical_atomic_densities(const ResidueSet& a, const WitnessSet& x) {
  const auto n = a.modulus();
  std::map<IndexMask, std::int64_t> counts;
  for (std::int64_t y = 0; y < n; ++y) {
    IndexMask trace = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (a.contains(y + x[i])) trace |= IndexMask{1} << i;
    }
    ++counts[trace];
  }
  std::map<IndexMask, Rational> out;
  for (auto [mask, c] : counts) out.emplace(mask, rational(c, n));
  return out;
}

/// Sum of atomic densities over atoms containing `subset`.
inline Rational aggregate(const std::map<IndexMask, Rational>& densities, IndexMask subset) {
  Rational total(0);
  for (const auto& [mask, v] : densities) {
    if ((mask & subset) == subset) total += v;
  }
  return total;
}

}  // namespace dilates
