#include "bnet/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace bnet {

Rational::Rational(long n, long d) {
  if (d == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view s) {
  // Trim whitespace.
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(Errc::MalformedInput, "empty rational literal");

  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q))
      fail(Errc::MalformedInput, "bad fraction literal '" + std::string(s) + "'");
    mpq_class v{mpz_class(std::string(p), 10), mpz_class(std::string(q), 10)};
    if (v.get_den() == 0) fail(Errc::DivisionByZero, "fraction with zero denominator");
    v.canonicalize();
    return Rational(neg ? mpq_class(-v) : v);
  }

  // Decimal with optional fraction part and exponent: converted exactly.
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es)) fail(Errc::MalformedInput, "bad exponent in rational literal");
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  long frac_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail(Errc::MalformedInput, "bad decimal literal");
    if (!ip.empty() && !all_digits(ip)) fail(Errc::MalformedInput, "bad decimal literal");
    if (!fp.empty() && !all_digits(fp)) fail(Errc::MalformedInput, "bad decimal literal");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) fail(Errc::MalformedInput, "bad integer literal '" + std::string(s) + "'");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";

  mpz_class mantissa(digits, 10);
  mpq_class v(mantissa);
  long net = exp10 - frac_digits;
  if (net != 0) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net > 0 ? net : -net));
    if (net > 0)
      v *= mpq_class(p10);
    else
      v /= mpq_class(p10);
  }
  v.canonicalize();
  return Rational(neg ? mpq_class(-v) : v);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) fail(Errc::MalformedInput, "non-finite double");
  mpq_class v;
  mpq_set_d(v.get_mpq_t(), x);
  return Rational(v);
}

std::optional<Rational> Rational::nearest(double x, unsigned long max_den) {
  if (!std::isfinite(x) || max_den == 0) return std::nullopt;
  bool neg = x < 0;
  double y = neg ? -x : x;

  // Continued-fraction convergents h/k until the denominator cap.
  double frac = y;
  mpz_class h_nm1 = 1, k_nm1 = 0;  // convergent n-1
  mpz_class h_nm2 = 0, k_nm2 = 1;  // convergent n-2
  bool have = false;
  for (int iter = 0; iter < 64; ++iter) {
    double a_floor = std::floor(frac);
    if (a_floor > 1e18) break;
    mpz_class a(static_cast<unsigned long>(a_floor));
    mpz_class h = a * h_nm1 + h_nm2;
    mpz_class k = a * k_nm1 + k_nm2;
    if (k > mpz_class(max_den)) break;
    h_nm2 = h_nm1; k_nm2 = k_nm1;
    h_nm1 = h; k_nm1 = k;
    have = true;
    double rem = frac - a_floor;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (!have) return std::nullopt;
  mpq_class v(h_nm1, k_nm1);
  v.canonicalize();
  return Rational(neg ? mpq_class(-v) : v);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base.is_zero() && e < 0) fail(Errc::DivisionByZero, "0 raised to a negative power");
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
  mpq_class v = e > 0 ? mpq_class(n, d) : mpq_class(d, n);
  v.canonicalize();
  return Rational(v);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace bnet
