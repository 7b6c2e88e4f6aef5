#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "bnet/errors.hpp"

namespace bnet {

/// Arbitrary-precision rational, always canonical: positive denominator,
/// gcd(|num|, den) = 1.  All equilibrium values in this library are carried
/// exactly in this type; doubles appear only in iterative solvers and export.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit on purpose, lets integer literals mix in
  Rational(long n, long d);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p", "p/q", decimal strings ("0.5", "-1.25e-3").  Decimal input
  /// converts exactly (0.5 -> 1/2), never through a double.
  static Rational parse(std::string_view s);

  /// Exact value of the double's binary representation.
  static Rational from_double(double x);

  /// Best rational with denominator <= max_den near x (continued fractions).
  /// Used to snap float solver output back onto exact values.
  static std::optional<Rational> nearest(double x, unsigned long max_den);

  double to_double() const { return q_.get_d(); }
  /// "p" when the denominator is 1, else "p/q".
  std::string str() const;

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }

  /// base^e with integer e (negative allowed; DivisionByZero on 0^-e).
  static Rational pow(const Rational& base, long e);

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace bnet
