#pragma once

#include <cmath>

#include "bnet/rational.hpp"

namespace bnet {

/// A number that is either exact (Rational) or a double with an attached
/// absolute tolerance.  Exact scalars compare exactly; once an approx value
/// enters an expression the result is approx and comparisons are tolerant.
class Scalar {
 public:
  static constexpr double kDefaultTol = 1e-9;

  Scalar() : exact_(true), r_(0), v_(0), tol_(0) {}
  Scalar(Rational r) : exact_(true), r_(std::move(r)), v_(r_.to_double()), tol_(0) {}  // NOLINT
  static Scalar approx(double v, double tol = kDefaultTol) {
    Scalar s;
    s.exact_ = false;
    s.v_ = v;
    s.tol_ = tol;
    return s;
  }

  bool exact() const { return exact_; }
  double tol() const { return tol_; }
  double value() const { return exact_ ? r_.to_double() : v_; }
  /// Exact payload; for approx scalars the exact dyadic value of the double.
  Rational rational() const { return exact_ ? r_ : Rational::from_double(v_); }

  /// -1, 0, +1.  Approx comparisons treat |a-b| <= max(tol_a, tol_b) as equal.
  int compare(const Scalar& o) const {
    if (exact_ && o.exact_) {
      if (r_ < o.r_) return -1;
      if (o.r_ < r_) return 1;
      return 0;
    }
    double t = std::max(tol_, o.tol_);
    double d = value() - o.value();
    if (std::fabs(d) <= t) return 0;
    return d < 0 ? -1 : 1;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.compare(b) == 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.compare(b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return a.compare(b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return a.compare(b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return a.compare(b) >= 0; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, a.rational() + b.rational(), a.value() + b.value());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, a.rational() - b.rational(), a.value() - b.value());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, a.rational() * b.rational(), a.value() * b.value());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.exact() ? b.rational().is_zero() : b.value() == 0.0)
      fail(Errc::DivisionByZero, "scalar division by zero");
    return combine(a, b, a.exact() && b.exact() ? a.rational() / b.rational() : Rational(0),
                   a.value() / b.value());
  }

 private:
  static Scalar combine(const Scalar& a, const Scalar& b, Rational exact_val, double approx_val) {
    if (a.exact_ && b.exact_) return Scalar(std::move(exact_val));
    return approx(approx_val, std::max({a.tol_, b.tol_, kDefaultTol}));
  }

  bool exact_;
  Rational r_;
  double v_;
  double tol_;
};

}  // namespace bnet
