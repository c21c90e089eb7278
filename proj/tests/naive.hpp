#pragma once

// Slow reference implementations used as oracles.

#include <cstdint>
#include <set>
#include <vector>

#include "dilates/core.hpp"

namespace naive {

inline std::set<std::int64_t> sumset(const std::vector<std::int64_t>& coeffs, const std::vector<std::int64_t>& a,
                                     std::int64_t n) {
  std::set<std::int64_t> out;
  std::vector<std::size_t> idx(coeffs.size(), 0);
  for (;;) {
    __int128 s = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += static_cast<__int128>(coeffs[j]) * a[idx[j]];
    out.insert(n ? dilates::floor_mod(s, n) : static_cast<std::int64_t>(s));
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == a.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

/// Largest subset of `ground` whose sumset misses d (n = 0: integers).
inline std::size_t max_avoiding(const std::vector<std::int64_t>& ground, const std::vector<std::int64_t>& coeffs,
                                std::int64_t d, std::int64_t n) {
  std::size_t best = 0;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << ground.size()); ++m) {
    std::vector<std::int64_t> a;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (m >> i & 1U) a.push_back(ground[i]);
    }
    if (a.size() <= best) continue;
    auto s = sumset(coeffs, a, n);
    if (!s.count(n ? dilates::floor_mod(d, n) : d)) best = a.size();
  }
  return best;
}

inline std::uint64_t count_avoiding(int m, int k, const std::vector<int>& diffs) {
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    if (__builtin_popcountll(s) != k) continue;
    bool ok = true;
    for (int f : diffs) {
      if (f < 64 && (s & (s >> f))) ok = false;
    }
    total += ok ? 1 : 0;
  }
  return total;
}

}  // namespace naive
