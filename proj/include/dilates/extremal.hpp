#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

#include "dilates/core.hpp"
#include "dilates/sumsets.hpp"

namespace dilates {

/// Largest X inside `ground` with d missing from the dilate sumset of X.
struct AvoidanceInstance {
  std::vector<std::int64_t> ground;  // distinct; residues in [0, n) in modular mode
  DilateEquation eq = DilateEquation::canonical();
  std::int64_t d = 0;
  ModeSpec mode = ModeSpec::integer();

  static AvoidanceInstance interval(std::int64_t lo, std::int64_t hi, DilateEquation eq, std::int64_t d) {
    AvoidanceInstance inst;
    for (auto x = lo; x <= hi; ++x) inst.ground.push_back(x);
    inst.eq = std::move(eq);
    inst.d = d;
    return inst;
  }
};

struct SearchOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  int threads = 1;
  /// Branch in ascending element order so the reported witness is the
  /// lexicographically smallest optimal one. Forces a single thread.
  bool canonical = false;
};

struct SearchResult {
  std::int64_t optimum = 0;
  std::vector<std::int64_t> witness;  // ascending
  std::uint64_t nodes = 0;
  bool proved = false;
};

namespace detail {

/// Conflict structure over ground indices, built once per instance.
struct ConflictModel {
  int n = 0;
  std::uint64_t usable = 0;             // elements not forbidden on their own
  std::vector<std::uint64_t> pair;      // pair[x]: y conflicting with x alone
  std::vector<std::uint64_t> triple;    // triple[x*n+y]: z closing a forbidden triple
  std::vector<std::vector<std::uint64_t>> wide;  // forbidden sets of size >= 4 containing x

  std::uint64_t triple_at(int x, int y) const { return triple[static_cast<std::size_t>(x * n + y)]; }
};

inline ConflictModel build_conflicts(const AvoidanceInstance& inst) {
  const auto& g = inst.ground;
  ConflictModel cm;
  cm.n = static_cast<int>(g.size());
  const std::size_t n = g.size();
  cm.usable = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  cm.pair.assign(n, 0);
  cm.triple.assign(n * n, 0);
  cm.wide.assign(n, {});

  std::vector<std::uint64_t> masks;
  for_each_solution(g, inst.eq, inst.d, inst.mode,
                    [&](std::span<const int> idx) { masks.push_back(tuple_mask(idx)); });
  for (auto m : minimal_masks(std::move(masks))) {
    switch (std::popcount(m)) {
      case 1:
        cm.usable &= ~m;
        break;
      case 2: {
        int a = std::countr_zero(m);
        int b = std::countr_zero(m & (m - 1));
        cm.pair[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        cm.pair[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
        break;
      }
      case 3: {
        int a = std::countr_zero(m);
        auto r = m & (m - 1);
        int b = std::countr_zero(r);
        int c = std::countr_zero(r & (r - 1));
        auto put = [&](int x, int y, int z) {
          cm.triple[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] |= std::uint64_t{1} << z;
        };
        put(a, b, c); put(b, a, c); put(a, c, b); put(c, a, b); put(b, c, a); put(c, b, a);
        break;
      }
      default:
        for (auto bits = m; bits; bits &= bits - 1) cm.wide[static_cast<std::size_t>(std::countr_zero(bits))].push_back(m);
    }
  }
  return cm;
}

/// Greedy clique partition of `cand` in the pair-conflict graph, lowest
/// element first. Each clique holds at most one chosen element.
inline int clique_cover_bound(const ConflictModel& cm, std::uint64_t cand) {
  int cliques = 0;
  while (cand) {
    int v = std::countr_zero(cand);
    std::uint64_t clique = std::uint64_t{1} << v;
    std::uint64_t common = cand & cm.pair[static_cast<std::size_t>(v)];
    while (common) {
      int u = std::countr_zero(common);
      clique |= std::uint64_t{1} << u;
      common &= cm.pair[static_cast<std::size_t>(u)];
    }
    cand &= ~clique;
    ++cliques;
  }
  return cliques;
}

class BranchAndBound {
 public:
  BranchAndBound(const ConflictModel& cm, const SearchOptions& opts) : cm_(cm), opts_(opts) {}

  /// Candidates left after adding v to `chosen`.
  std::uint64_t admit(std::uint64_t chosen, std::uint64_t cand, int v) const {
    const auto vbit = std::uint64_t{1} << v;
    cand &= ~vbit & ~cm_.pair[static_cast<std::size_t>(v)];
    for (auto c = chosen; c; c &= c - 1) cand &= ~cm_.triple_at(v, std::countr_zero(c));
    for (auto f : cm_.wide[static_cast<std::size_t>(v)]) {
      auto rest = f & ~chosen & ~vbit;
      if (std::popcount(rest) == 1) cand &= ~rest;
    }
    return cand;
  }

  void run(std::uint64_t chosen, std::uint64_t cand) { expand(chosen, cand); }

  std::atomic<int>* best_size = nullptr;  // shared incumbent size
  std::mutex* best_mutex = nullptr;
  std::uint64_t* best_set = nullptr;
  std::atomic<std::uint64_t>* nodes = nullptr;
  std::atomic<bool>* aborted = nullptr;

 private:
  int pick(std::uint64_t cand) const {
    if (opts_.canonical) return std::countr_zero(cand);
    int best = -1, best_deg = -1;
    for (auto c = cand; c; c &= c - 1) {
      int v = std::countr_zero(c);
      int deg = std::popcount(cm_.pair[static_cast<std::size_t>(v)] & cand);
      if (deg > best_deg) best = v, best_deg = deg;
    }
    return best;
  }

  void offer(std::uint64_t chosen) {
    int size = std::popcount(chosen);
    if (size <= best_size->load(std::memory_order_relaxed)) return;
    std::lock_guard lock(*best_mutex);
    if (size > best_size->load()) {
      *best_set = chosen;
      best_size->store(size);
    }
  }

  void expand(std::uint64_t chosen, std::uint64_t cand) {
    if (aborted->load(std::memory_order_relaxed)) return;
    auto count = nodes->fetch_add(1, std::memory_order_relaxed) + 1;
    if (opts_.node_budget && count > opts_.node_budget) {
      aborted->store(true);
      return;
    }
    offer(chosen);
    while (cand) {
      int size = std::popcount(chosen);
      if (size + clique_cover_bound(cm_, cand) <= best_size->load(std::memory_order_relaxed)) return;
      int v = pick(cand);
      expand(chosen | std::uint64_t{1} << v, admit(chosen, cand, v));
      if (aborted->load(std::memory_order_relaxed)) return;
      cand &= ~(std::uint64_t{1} << v);
    }
  }

  const ConflictModel& cm_;
  const SearchOptions& opts_;
};

inline bool all_distinct(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace detail

/// Re-checks a witness directly against the dilate sumset definition.
inline bool avoids(const AvoidanceInstance& inst, std::span<const std::int64_t> xs) {
  if (xs.empty()) return true;
  if (inst.mode.is_modular()) {
    return excludes(inst.eq, residue_set_from_list(inst.mode.modulus(), xs), inst.d);
  }
  bool hit = false;
  for_each_solution(xs, inst.eq, inst.d, inst.mode, [&](std::span<const int>) { hit = true; });
  return !hit;
}

/// Exact maximum of |X| over X inside the ground set with d missing from the
/// dilate sumset of X (tuples with repetition), by branch and bound.
inline SearchResult max_avoiding_subset(const AvoidanceInstance& raw, const SearchOptions& opts = {}) {
  AvoidanceInstance inst = raw;
  if (inst.ground.size() > 64) {
    throw Error("ground set has " + std::to_string(inst.ground.size()) +
                " elements; the bitset search handles at most 64 (use the density counting bounds instead)");
  }
  if (inst.mode.is_modular()) {
    for (auto& x : inst.ground) x = inst.mode.reduce(x);
    inst.d = inst.mode.reduce(inst.d);
  }
  std::sort(inst.ground.begin(), inst.ground.end());
  if (!detail::all_distinct(inst.ground)) throw Error("ground elements must be distinct");

  SearchResult res;
  if (inst.ground.empty()) {
    res.proved = true;
    return res;
  }

  auto cm = detail::build_conflicts(inst);

  std::atomic<int> best_size{0};
  std::mutex best_mutex;
  std::uint64_t best_set = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};

  // Translation symmetry: on all of Z_n with sum(l) = 0 mod n, some optimum contains 0.
  std::uint64_t root_chosen = 0;
  std::uint64_t root_cand = cm.usable;
  const auto n = static_cast<std::int64_t>(inst.ground.size());
  if (inst.mode.is_modular() && n == inst.mode.modulus() && inst.mode.reduce(inst.eq.sum()) == 0 &&
      (cm.usable & 1U)) {
    root_chosen = 1;
    detail::BranchAndBound tmp(cm, opts);
    root_cand = tmp.admit(0, cm.usable, 0);
  }

  auto wire = [&](detail::BranchAndBound& bb) {
    bb.best_size = &best_size;
    bb.best_mutex = &best_mutex;
    bb.best_set = &best_set;
    bb.nodes = &nodes;
    bb.aborted = &aborted;
  };

  const int threads = opts.canonical ? 1 : std::max(1, opts.threads);
  if (threads == 1) {
    detail::BranchAndBound bb(cm, opts);
    wire(bb);
    bb.run(root_chosen, root_cand);
  } else {
    // Split the root: subproblem i takes the i-th candidate and drops earlier ones.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> tasks;
    tasks.emplace_back(root_chosen, 0);  // root itself as a feasible set
    detail::BranchAndBound splitter(cm, opts);
    for (auto c = root_cand; c; c &= c - 1) {
      int v = std::countr_zero(c);
      auto later = root_cand & ~((std::uint64_t{2} << v) - 1);
      tasks.emplace_back(root_chosen | std::uint64_t{1} << v, splitter.admit(root_chosen, later, v));
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        detail::BranchAndBound bb(cm, opts);
        wire(bb);
        for (auto i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
          bb.run(tasks[i].first, tasks[i].second);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  res.optimum = best_size.load();
  for (int i = 0; i < cm.n; ++i) {
    if (best_set >> i & 1U) res.witness.push_back(inst.ground[static_cast<std::size_t>(i)]);
  }
  res.nodes = nodes.load();
  res.proved = !aborted.load();
  return res;
}

/// All optimal witnesses of the given size (up to `limit`), ascending lex order.
inline std::vector<std::vector<std::int64_t>> all_optimal_witnesses(const AvoidanceInstance& raw,
                                                                     std::int64_t optimum,
                                                                     std::size_t limit = 1000) {
  AvoidanceInstance inst = raw;
  if (inst.mode.is_modular()) {
    for (auto& x : inst.ground) x = inst.mode.reduce(x);
    inst.d = inst.mode.reduce(inst.d);
  }
  std::sort(inst.ground.begin(), inst.ground.end());
  if (inst.ground.size() > 64 || !detail::all_distinct(inst.ground)) throw Error("invalid ground set");
  auto cm = detail::build_conflicts(inst);
  SearchOptions opts;
  opts.canonical = true;
  detail::BranchAndBound bb(cm, opts);

  std::vector<std::vector<std::int64_t>> out;
  auto rec = [&](auto&& self, std::uint64_t chosen, std::uint64_t cand) -> void {
    if (out.size() >= limit) return;
    if (std::popcount(chosen) == optimum) {
      std::vector<std::int64_t> w;
      for (auto c = chosen; c; c &= c - 1) w.push_back(inst.ground[static_cast<std::size_t>(std::countr_zero(c))]);
      out.push_back(std::move(w));
      return;
    }
    while (cand) {
      if (std::popcount(chosen) + detail::clique_cover_bound(cm, cand) < optimum) return;
      int v = std::countr_zero(cand);
      self(self, chosen | std::uint64_t{1} << v, bb.admit(chosen, cand, v));
      cand &= cand - 1;
    }
  };
  rec(rec, 0, cm.usable);
  return out;
}

/// Exact max |A| over A in Z_p with d missing from the dilate sumset. For
/// prime p and d != 0 this is M(p) by dilation symmetry.
inline SearchResult max_excluding_set(std::int64_t p, const DilateEquation& eq, std::int64_t d,
                                      const SearchOptions& opts = {}) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (p > 64) throw Error("p > 64 exceeds the bitset search");
  if (floor_mod(d, p) == 0) throw Error("d must be a nonzero residue");
  AvoidanceInstance inst;
  for (std::int64_t x = 0; x < p; ++x) inst.ground.push_back(x);
  inst.eq = eq;
  inst.d = floor_mod(d, p);
  inst.mode = ModeSpec::modular(p);
  return max_avoiding_subset(inst, opts);
}

/// Number of k-subsets of {0..m-1} with no two elements at a forbidden difference.
inline std::uint64_t count_avoiding_subsets(int m, int k, std::span<const int> forbidden_diffs) {
  if (m < 0 || m > 40) throw Error("count_avoiding_subsets needs 0 <= m <= 40");
  if (k < 0 || k > m) return 0;
  int window = 0;
  for (int f : forbidden_diffs) {
    if (f <= 0) throw Error("forbidden differences must be positive");
    window = std::max(window, f);
  }
  window = std::min(window, m);
  if (window > 20) throw Error("forbidden differences above 20 are not supported");
  std::uint32_t forbid = 0;  // bit f-1 set iff f forbidden
  for (int f : forbidden_diffs) {
    if (f <= window) forbid |= 1U << (f - 1);
  }
  const std::uint32_t states = 1U << window;
  // dp[state][count]; bit j of state = position (i-1-j) chosen
  std::vector<std::vector<std::uint64_t>> dp(states, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
  dp[0][0] = 1;
  const std::uint32_t keep = states - 1;
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<std::uint64_t>> next(states, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
    for (std::uint32_t s = 0; s < states; ++s) {
      for (int c = 0; c <= k; ++c) {
        auto ways = dp[s][static_cast<std::size_t>(c)];
        if (!ways) continue;
        next[(s << 1) & keep][static_cast<std::size_t>(c)] += ways;
        if (c < k && (s & forbid) == 0) next[((s << 1) | 1U) & keep][static_cast<std::size_t>(c) + 1] += ways;
      }
    }
    dp = std::move(next);
  }
  std::uint64_t total = 0;
  for (std::uint32_t s = 0; s < states; ++s) total += dp[s][static_cast<std::size_t>(k)];
  return total;
}

/// The density bound delta / |Y| from a local maximum.
inline Rational density_bound_from_delta(std::int64_t delta, std::int64_t ylen) {
  if (ylen < 1) throw Error("|Y| must be positive");
  if (delta < 0 || delta > ylen) throw Error("need 0 <= delta <= |Y|");
  return rational(delta, ylen);
}

}  // namespace dilates
