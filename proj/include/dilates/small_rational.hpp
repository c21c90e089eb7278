#pragma once

// Machine-word rational used as a fast path by the exact simplex. Every
// operation either yields the exact result or throws SmallOverflow; callers
// rerun with Rational in that case.

#include <cstdint>
#include <numeric>
#include <optional>

#include "dilates/rational.hpp"

namespace dilates {

struct SmallOverflow {};

class SmallRational {
 public:
  SmallRational() = default;
  SmallRational(std::int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)

  static std::optional<SmallRational> from(const Rational& q) {
    const auto& n = q.raw().get_num();
    const auto& d = q.raw().get_den();
    if (!n.fits_slong_p() || !d.fits_slong_p()) return std::nullopt;
    SmallRational r;
    r.num_ = n.get_si();
    r.den_ = d.get_si();
    if (r.num_ == INT64_MIN) return std::nullopt;
    return r;
  }

  Rational to_rational() const { return Rational(big_int(num_), big_int(den_)); }

  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return num_ == 0; }

  SmallRational operator-() const {
    SmallRational r = *this;
    r.num_ = -num_;
    return r;
  }

  SmallRational& operator+=(const SmallRational& o) { return *this = add(*this, o.num_, o.den_); }
  SmallRational& operator-=(const SmallRational& o) { return *this = add(*this, -o.num_, o.den_); }
  SmallRational& operator*=(const SmallRational& o) { return *this = mul(*this, o.num_, o.den_); }
  SmallRational& operator/=(const SmallRational& o) {
    if (o.num_ == 0) throw Error("division by zero rational");
    return *this = o.num_ > 0 ? mul(*this, o.den_, o.num_) : mul(*this, -o.den_, -o.num_);
  }
  friend SmallRational operator+(SmallRational a, const SmallRational& b) { return a += b; }
  friend SmallRational operator-(SmallRational a, const SmallRational& b) { return a -= b; }
  friend SmallRational operator*(SmallRational a, const SmallRational& b) { return a *= b; }
  friend SmallRational operator/(SmallRational a, const SmallRational& b) { return a /= b; }
  friend bool operator==(const SmallRational&, const SmallRational&) = default;

 private:
  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v <= INT64_MIN) throw SmallOverflow{};
    return static_cast<std::int64_t>(v);
  }

  // a + n/d with d > 0.
  static SmallRational add(const SmallRational& a, std::int64_t n, std::int64_t d) {
    if (n == 0) return a;
    if (a.num_ == 0) return make(narrow(n), d);
    const std::int64_t g = std::gcd(a.den_, d);
    const __int128 t = static_cast<__int128>(a.num_) * (d / g) + static_cast<__int128>(n) * (a.den_ / g);
    if (t == 0) return SmallRational{};
    // gcd(t, den) divides g.
    const auto tg = static_cast<std::int64_t>(t % g);
    const std::int64_t g2 = std::gcd(tg, g);
    SmallRational r;
    r.num_ = narrow(t / g2);
    r.den_ = narrow(static_cast<__int128>(a.den_ / g) * (d / g2));
    return r;
  }

  // a * n/d with d > 0 and n/d in lowest terms.
  static SmallRational mul(const SmallRational& a, std::int64_t n, std::int64_t d) {
    if (a.num_ == 0 || n == 0) return SmallRational{};
    const std::int64_t g1 = std::gcd(a.num_, d);
    const std::int64_t g2 = std::gcd(n, a.den_);
    SmallRational r;
    r.num_ = narrow(static_cast<__int128>(a.num_ / g1) * (n / g2));
    r.den_ = narrow(static_cast<__int128>(a.den_ / g2) * (d / g1));
    return r;
  }

  static SmallRational make(std::int64_t n, std::int64_t d) {
    SmallRational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dilates
