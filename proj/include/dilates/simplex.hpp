#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dilates/rational.hpp"
#include "dilates/small_rational.hpp"

namespace dilates {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool positive(const Rational& v) { return v.sign() > 0; }
  static bool negative(const Rational& v) { return v.sign() < 0; }
  static bool zero(const Rational& v) { return v.is_zero(); }
  static bool nonzero(const Rational& v) { return !v.is_zero(); }
  static void sub_product(Rational& acc, const Rational& a, const Rational& b) { acc.sub_product(a, b); }
  static void snap(Rational&) {}
};

template <>
struct ScalarTraits<SmallRational> {
  static bool positive(const SmallRational& v) { return v.sign() > 0; }
  static bool negative(const SmallRational& v) { return v.sign() < 0; }
  static bool zero(const SmallRational& v) { return v.is_zero(); }
  static bool nonzero(const SmallRational& v) { return !v.is_zero(); }
  static void sub_product(SmallRational& acc, const SmallRational& a, const SmallRational& b) { acc -= a * b; }
  static void snap(SmallRational&) {}
};

template <>
struct ScalarTraits<double> {
  static constexpr double eps = 1e-9;
  static bool positive(double v) { return v > eps; }
  static bool negative(double v) { return v < -eps; }
  static bool zero(double v) { return std::fabs(v) <= eps; }
  static bool nonzero(double v) { return v != 0.0; }
  static void sub_product(double& acc, double a, double b) { acc -= a * b; }
  static void snap(double& v) {
    if (std::fabs(v) < 1e-13) v = 0.0;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

template <class T>
struct StandardFormResult {
  LpStatus status = LpStatus::Infeasible;
  T value{};
  std::vector<T> x;     // primal, one per column
  std::vector<T> dual;  // one per row; dual^T A >= c at optimum
  std::size_t pivots = 0;
};

/// Dense tableau simplex for  max c^T x  s.t.  A x = b, x >= 0.
///
/// Two phases with one artificial per row; Bland's rule in both. The
/// artificial columns are kept so B^{-1} (and with it the dual) can be
/// read off the final tableau. The reduced-cost row is carried in the
/// tableau and updated by each pivot.
template <class T>
class TableauSimplex {
  using Tr = ScalarTraits<T>;

 public:
  TableauSimplex(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const std::vector<T>& c)
      : m_(b.size()), n_(c.size()), cost_(c) {
    width_ = n_ + m_ + 1;
    tab_.assign(m_, std::vector<T>(width_, T(0)));
    flipped_.assign(m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      bool flip = Tr::negative(b[r]);
      flipped_[r] = flip;
      for (std::size_t j = 0; j < n_; ++j) tab_[r][j] = flip ? T(-a[r][j]) : a[r][j];
      tab_[r][n_ + r] = T(1);
      tab_[r][width_ - 1] = flip ? T(-b[r]) : b[r];
    }
    basis_.resize(m_);
    is_basic_.assign(n_ + m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = n_ + r;
      is_basic_[n_ + r] = true;
    }
  }

  std::size_t iteration_limit = 1'000'000;

  StandardFormResult<T> solve(bool feasibility_only = false) {
    StandardFormResult<T> res;
    // Phase 1: maximize -(sum of artificials).
    std::vector<T> phase1(n_ + m_, T(0));
    for (std::size_t r = 0; r < m_; ++r) phase1[n_ + r] = T(-1);
    crash();
    auto infeasibility = [&] {
      T sum(0);
      for (std::size_t r = 0; r < m_; ++r) {
        if (basis_[r] >= n_) sum += tab_[r][width_ - 1];
      }
      return sum;
    };
    LpStatus st = LpStatus::Optimal;
    if (Tr::positive(infeasibility())) {
      load_objective(phase1);
      st = optimize(n_ + m_);
    }
    res.pivots = pivots_;
    if (st != LpStatus::Optimal) {
      res.status = st;
      return res;
    }
    if (Tr::positive(infeasibility())) {
      res.status = LpStatus::Infeasible;
      return res;
    }

    if (!feasibility_only) {
      std::vector<T> phase2(n_ + m_, T(0));
      for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
      load_objective(phase2);
      st = optimize(n_);
      res.pivots = pivots_;
      if (st != LpStatus::Optimal) {
        res.status = st;
        return res;
      }
    }

    res.status = LpStatus::Optimal;
    res.x.assign(n_, T(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) res.x[basis_[r]] = tab_[r][width_ - 1];
    }
    res.value = T(0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!Tr::zero(res.x[j]) && !Tr::zero(cost_[j])) res.value += cost_[j] * res.x[j];
    }
    // dual_i = c_B^T (B^{-1})_{., i}; the artificial columns hold B^{-1}.
    res.dual.assign(m_, T(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= n_) continue;
      const T& cb = cost_[basis_[r]];
      if (Tr::zero(cb)) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        const T& binv = tab_[r][n_ + i];
        if (!Tr::zero(binv)) res.dual[i] += cb * binv;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (flipped_[i]) res.dual[i] = T(-res.dual[i]);
    }
    return res;
  }

 private:
  /// red_j = obj_j - c_B^T B^{-1} A_j for every column.
  void load_objective(const std::vector<T>& obj) {
    red_.assign(width_, T(0));
    for (std::size_t j = 0; j < n_ + m_; ++j) red_[j] = obj[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const T& cb = obj[basis_[r]];
      if (!Tr::nonzero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (Tr::nonzero(tab_[r][j])) Tr::sub_product(red_[j], cb, tab_[r][j]);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) red_[basis_[r]] = T(0);
  }

  /// Enters the lowest-index column below `ncols` with positive reduced cost.
  LpStatus optimize(std::size_t ncols) {
    for (;;) {
      if (pivots_ >= iteration_limit) return LpStatus::IterationLimit;
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!is_basic_[j] && Tr::positive(red_[j])) {
          enter = j;
          break;
        }
      }
      if (enter == ncols) return LpStatus::Optimal;

      std::size_t leave = m_;
      T best_ratio(0);
      for (std::size_t r = 0; r < m_; ++r) {
        // A basic artificial past phase 1 sits at zero and must stay there,
        // so any nonzero entry in its row blocks at ratio 0.
        const bool pinned = ncols == n_ && basis_[r] >= n_ && Tr::nonzero(tab_[r][enter]);
        if (!pinned && !Tr::positive(tab_[r][enter])) continue;
        T ratio = pinned ? T(0) : T(tab_[r][width_ - 1] / tab_[r][enter]);
        // Bland: minimum ratio, ties to the smallest basic index.
        bool take = leave == m_ || Tr::negative(ratio - best_ratio) ||
                    (Tr::zero(ratio - best_ratio) && basis_[r] < basis_[leave]);
        if (take) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void eliminate(std::vector<T>& tr, const std::vector<T>& pr, std::size_t col) {
    const T f = tr[col];
    if (!Tr::nonzero(f)) return;
    for (std::size_t j = 0; j < width_; ++j) {
      if (Tr::nonzero(pr[j])) {
        Tr::sub_product(tr[j], f, pr[j]);
        Tr::snap(tr[j]);
      }
    }
    tr[col] = T(0);
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const T p = tab_[row][col];
    auto& pr = tab_[row];
    for (auto& v : pr) {
      if (Tr::nonzero(v)) v /= p;
    }
    pr[col] = T(1);
    for (std::size_t r = 0; r < m_; ++r) {
      if (r != row) eliminate(tab_[r], pr, col);
    }
    if (!red_.empty()) eliminate(red_, pr, col);
    is_basic_[basis_[row]] = false;
    is_basic_[col] = true;
    basis_[row] = col;
  }

  /// Starting basis: a row with positive right-hand side takes the first
  /// real column that is positive there and zero in every other row.
  void crash() {
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t hit = m_, count = 0;
      for (std::size_t r = 0; r < m_ && count < 2; ++r) {
        if (Tr::nonzero(tab_[r][j])) {
          hit = r;
          ++count;
        }
      }
      if (count != 1 || basis_[hit] < n_) continue;
      if (Tr::positive(tab_[hit][j]) && Tr::positive(tab_[hit][width_ - 1])) pivot(hit, j);
    }
  }

  std::size_t m_, n_, width_;
  std::vector<T> cost_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> red_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<bool> flipped_;
  std::size_t pivots_ = 0;
};

template <class T>
StandardFormResult<T> solve_standard_form(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                          const std::vector<T>& c, bool feasibility_only = false) {
  TableauSimplex<T> s(a, b, c);
  return s.solve(feasibility_only);
}

/// Exact solve that runs on machine-word rationals and reruns with GMP
/// rationals if any intermediate value leaves that range. Both runs take
/// the same pivots, so the result does not depend on which one finished.
inline StandardFormResult<Rational> solve_exact(const std::vector<std::vector<Rational>>& a,
                                                const std::vector<Rational>& b, const std::vector<Rational>& c,
                                                bool feasibility_only = false) {
  auto small = [](const Rational& q) {
    auto s = SmallRational::from(q);
    if (!s) throw SmallOverflow{};
    return *s;
  };
  try {
    std::vector<std::vector<SmallRational>> sa(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      sa[r].reserve(a[r].size());
      for (const auto& v : a[r]) sa[r].push_back(small(v));
    }
    std::vector<SmallRational> sb, sc;
    for (const auto& v : b) sb.push_back(small(v));
    for (const auto& v : c) sc.push_back(small(v));
    auto fast = solve_standard_form(sa, sb, sc, feasibility_only);
    StandardFormResult<Rational> out;
    out.status = fast.status;
    out.value = fast.value.to_rational();
    out.pivots = fast.pivots;
    for (const auto& v : fast.x) out.x.push_back(v.to_rational());
    for (const auto& v : fast.dual) out.dual.push_back(v.to_rational());
    return out;
  } catch (const SmallOverflow&) {
    return solve_standard_form(a, b, c, feasibility_only);
  }
}

}  // namespace dilates
