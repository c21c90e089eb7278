#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dilates/rational.hpp"

namespace dilates {

/// Mask over witness indices: bit i set iff x_{i+1} is in the subset.
using IndexMask = std::uint64_t;

inline constexpr int kMaxWitnessSize = 63;

inline std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

template <class Wide>
  requires std::same_as<Wide, __int128>
inline std::int64_t floor_mod(Wide a, std::int64_t n) {
  auto r = static_cast<std::int64_t>(a % n);
  return r < 0 ? r + n : r;
}

/// Inverse of a modulo n, or 0 when gcd(a, n) != 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = floor_mod(a, n);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (r != 1) return 0;
  return floor_mod(t, n);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

inline std::string join(std::span<const std::int64_t> xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Coefficients (l_1, ..., l_k) of the sum of dilates l_1 A + ... + l_k A.
class DilateEquation {
 public:
  explicit DilateEquation(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw Error("a dilate equation needs at least two coefficients");
    for (auto c : coeffs_) {
      if (c == 0) throw Error("dilate coefficients must be nonzero");
    }
  }

  static DilateEquation canonical() { return DilateEquation({1, 1, -2}); }

  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::size_t arity() const { return coeffs_.size(); }
  std::int64_t sum() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0}); }
  std::string str() const { return join(coeffs_); }

  friend bool operator==(const DilateEquation&, const DilateEquation&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Whether arithmetic on witness elements happens over Z or over Z_n.
class ModeSpec {
 public:
  enum class Kind { Integer, Modular };

  static ModeSpec integer() { return ModeSpec(Kind::Integer, 0); }
  static ModeSpec modular(std::int64_t n) {
    if (n < 1) throw Error("modulus must be positive");
    return ModeSpec(Kind::Modular, n);
  }

  Kind kind() const { return kind_; }
  bool is_modular() const { return kind_ == Kind::Modular; }
  std::int64_t modulus() const { return modulus_; }

  std::int64_t reduce(std::int64_t v) const { return is_modular() ? floor_mod(v, modulus_) : v; }
  template <class Wide>
    requires std::same_as<Wide, __int128>
  std::int64_t reduce(Wide v) const {
    return is_modular() ? floor_mod(v, modulus_) : static_cast<std::int64_t>(v);
  }

  std::string name() const { return is_modular() ? "modular" : "integer"; }

  friend bool operator==(const ModeSpec&, const ModeSpec&) = default;

 private:
  ModeSpec(Kind k, std::int64_t n) : kind_(k), modulus_(n) {}
  Kind kind_;
  std::int64_t modulus_;
};

/// Strictly increasing list of non-negative integers x_1 < ... < x_n.
class WitnessSet {
 public:
  explicit WitnessSet(std::vector<std::int64_t> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw Error("witness set must be nonempty");
    if (elements_.size() > static_cast<std::size_t>(kMaxWitnessSize)) {
      throw Error("witness sets are limited to 63 elements");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i] < 0) throw Error("witness elements must be non-negative");
      if (i && elements_[i] <= elements_[i - 1]) {
        throw Error("witness elements must be strictly increasing");
      }
    }
  }

  /// Sorts and deduplicates before validating.
  static WitnessSet from_unsorted(std::vector<std::int64_t> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return WitnessSet(std::move(xs));
  }

  std::span<const std::int64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::int64_t operator[](std::size_t i) const { return elements_[i]; }

  /// Index of `value`, or -1.
  int index_of(std::int64_t value) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), value);
    if (it == elements_.end() || *it != value) return -1;
    return static_cast<int>(it - elements_.begin());
  }

  /// Elements of the subset encoded by `mask`, ascending.
  std::vector<std::int64_t> subset(IndexMask mask) const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (mask >> i & 1U) out.push_back(elements_[i]);
    }
    return out;
  }

  IndexMask full_mask() const {
    return elements_.size() == 64 ? ~IndexMask{0} : (IndexMask{1} << elements_.size()) - 1;
  }

  /// True iff all elements are pairwise distinct in `mode`.
  bool injective_in(const ModeSpec& mode) const {
    if (!mode.is_modular()) return true;
    std::vector<std::int64_t> r;
    r.reserve(elements_.size());
    for (auto x : elements_) r.push_back(mode.reduce(x));
    std::sort(r.begin(), r.end());
    return std::adjacent_find(r.begin(), r.end()) == r.end();
  }

  std::string str() const { return "{" + join(elements_) + "}"; }

  friend bool operator==(const WitnessSet&, const WitnessSet&) = default;

 private:
  std::vector<std::int64_t> elements_;
};

// ---------------------------------------------------------------------------

/// Subset of Z_n stored as a bitmask of length n.
class ResidueSet {
 public:
  explicit ResidueSet(std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 1) throw Error("modulus must be positive");
    words_.assign(static_cast<std::size_t>((modulus + 63) / 64), 0);
  }

  static ResidueSet full(std::int64_t modulus) {
    ResidueSet s(modulus);
    for (std::int64_t x = 0; x < modulus; ++x) s.insert(x);
    return s;
  }

  std::int64_t modulus() const { return modulus_; }

  bool contains(std::int64_t x) const {
    auto r = floor_mod(x, modulus_);
    return words_[static_cast<std::size_t>(r / 64)] >> (r % 64) & 1U;
  }
  void insert(std::int64_t x) {
    auto r = floor_mod(x, modulus_);
    words_[static_cast<std::size_t>(r / 64)] |= std::uint64_t{1} << (r % 64);
  }
  void erase(std::int64_t x) {
    auto r = floor_mod(x, modulus_);
    words_[static_cast<std::size_t>(r / 64)] &= ~(std::uint64_t{1} << (r % 64));
  }

  std::int64_t size() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == modulus_; }

  std::vector<std::int64_t> members() const {
    std::vector<std::int64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (auto bits = words_[w]; bits; bits &= bits - 1) {
        out.push_back(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      }
    }
    return out;
  }

  /// {l * a mod n : a in this set}.
  ResidueSet dilated(std::int64_t lambda) const {
    ResidueSet out(modulus_);
    for (auto a : members()) out.insert(floor_mod(static_cast<__int128>(lambda) * a, modulus_));
    return out;
  }

  ResidueSet translated(std::int64_t t) const {
    ResidueSet out(modulus_);
    for (auto a : members()) out.insert(floor_mod(static_cast<__int128>(a) + t, modulus_));
    return out;
  }

  ResidueSet& operator|=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  /// Minkowski sum {a + b mod n}.
  ResidueSet sumset(const ResidueSet& o) const {
    if (o.modulus_ != modulus_) throw Error("sumset of sets with different moduli");
    const auto& small = o.size() < size() ? o : *this;
    const auto& big = o.size() < size() ? *this : o;
    ResidueSet out(modulus_);
    for (auto b : small.members()) out |= big.translated(b);
    return out;
  }

  std::string str() const { return "{" + join(members()) + "}"; }

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::int64_t modulus_;
  std::vector<std::uint64_t> words_;
};

/// Each x reduced mod n; duplicates collapse.
inline ResidueSet residue_set_from_list(std::int64_t n, std::span<const std::int64_t> xs) {
  ResidueSet s(n);
  for (auto x : xs) s.insert(x);
  return s;
}

// ---------------------------------------------------------------------------

/// Calls `fn(indices)` for every tuple (i_1..i_k) over `values` with
/// sum_j l_j values[i_j] == target (exactly, or mod n in modular mode).
/// Values must be pairwise distinct in `mode`.
template <class Fn>
void for_each_solution(std::span<const std::int64_t> values, const DilateEquation& eq,
                       std::int64_t target, const ModeSpec& mode, Fn&& fn) {
  const auto coeffs = eq.coeffs();
  const std::size_t k = coeffs.size();
  const std::size_t n = values.size();
  if (n == 0) return;

  std::unordered_map<std::int64_t, int> where;
  for (std::size_t i = 0; i < n; ++i) where.emplace(mode.reduce(values[i]), static_cast<int>(i));

  const std::int64_t last = coeffs[k - 1];
  const std::int64_t last_inv = mode.is_modular() ? mod_inverse(last, mode.modulus()) : 0;
  const std::int64_t goal = mode.reduce(target);

  std::vector<int> idx(k, 0);
  auto finish = [&](__int128 partial) {
    if (!mode.is_modular()) {
      __int128 rest = static_cast<__int128>(goal) - partial;
      if (rest % last != 0) return;
      __int128 v = rest / last;
      auto it = where.find(static_cast<std::int64_t>(v));
      if (it == where.end() || static_cast<__int128>(it->first) != v) return;
      idx[k - 1] = it->second;
      fn(std::span<const int>(idx));
    } else if (last_inv != 0) {
      std::int64_t rest = floor_mod(static_cast<__int128>(goal) - partial, mode.modulus());
      std::int64_t v = floor_mod(static_cast<__int128>(rest) * last_inv, mode.modulus());
      auto it = where.find(v);
      if (it == where.end()) return;
      idx[k - 1] = it->second;
      fn(std::span<const int>(idx));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        __int128 s = partial + static_cast<__int128>(last) * values[i];
        if (floor_mod(s, mode.modulus()) == goal) {
          idx[k - 1] = static_cast<int>(i);
          fn(std::span<const int>(idx));
        }
      }
    }
  };

  auto rec = [&](auto&& self, std::size_t pos, __int128 partial) -> void {
    if (pos + 1 == k) {
      finish(partial);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      idx[pos] = static_cast<int>(i);
      __int128 next = partial + static_cast<__int128>(coeffs[pos]) * values[i];
      if (mode.is_modular()) next = floor_mod(next, mode.modulus());
      self(self, pos + 1, next);
    }
  };
  rec(rec, 0, 0);
}

/// Index set of a tuple as a mask (repetition collapses).
inline IndexMask tuple_mask(std::span<const int> indices) {
  IndexMask m = 0;
  for (int i : indices) m |= IndexMask{1} << i;
  return m;
}

/// Removes masks that are supersets of other masks; result sorted ascending.
inline std::vector<IndexMask> minimal_masks(std::vector<IndexMask> masks) {
  std::sort(masks.begin(), masks.end(), [](IndexMask a, IndexMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<IndexMask> out;
  for (auto m : masks) {
    bool dominated = std::any_of(out.begin(), out.end(), [m](IndexMask f) { return (f & m) == f; });
    if (!dominated) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dilates
