#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace roboline {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar, always held in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) = 1.  Canonical form makes equality
/// structural, so equal values serialize to identical strings.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // implicit: lets call sites write plain integers
  Rational(const BigInt& num, const BigInt& den);

  /// Throws std::invalid_argument on malformed text (see parse for the grammar).
  explicit Rational(std::string_view text);

  /// Accepts "n" or "n/d" where n, d are optionally-signed decimal integers
  /// and d != 0.  Anything else (spaces, decimals, empty fields) is rejected.
  static std::optional<Rational> parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  /// -1, 0 or +1.
  int sign() const { return v_.sign(); }

  /// "n" when the denominator is 1, else "n/d"; always canonical.
  std::string str() const;

  Rational operator-() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);  // throws std::domain_error on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

 private:
  using Backing = boost::multiprecision::cpp_rational;
  explicit Rational(Backing v) : v_(std::move(v)) {}
  Backing v_;
};

/// Points on the line are just rational coordinates.
using Location = Rational;

/// One-dimensional similarity x |-> k * (x - t), k != 0: the frame change of
/// an observer at t whose unit of length is 1/k (k < 0 flips orientation).
/// Similarities form a group under composition.
class Similarity {
 public:
  /// Throws std::invalid_argument when k == 0 (a zoom of ratio 0 is not a
  /// frame change; activation code models "not activated" as k == 0 and must
  /// never build a Similarity from it).
  Similarity(Rational k, Rational t);

  static Similarity identity() { return Similarity(1, 0); }

  const Rational& k() const { return k_; }
  const Rational& t() const { return t_; }

  Location apply(const Location& x) const { return k_ * (x - t_); }
  Location operator()(const Location& x) const { return apply(x); }

  /// The unique similarity u with compose(u, *this) = compose(*this, u) = id.
  /// Solving k' * (k * (x - t) - t') = x forces (k', t') = (1/k, -k*t).
  Similarity inverse() const { return Similarity(1 / k_, -(k_ * t_)); }

  friend bool operator==(const Similarity& a, const Similarity& b) {
    return a.k_ == b.k_ && a.t_ == b.t_;
  }
  friend bool operator!=(const Similarity& a, const Similarity& b) { return !(a == b); }

 private:
  Rational k_;
  Rational t_;
};

/// Group law: compose(outer, inner).apply(x) == outer.apply(inner.apply(x)).
/// Closed form: (k_inner * k_outer, t_inner + t_outer / k_inner).
Similarity compose(const Similarity& outer, const Similarity& inner);

}  // namespace roboline
