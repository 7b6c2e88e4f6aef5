#include <doctest.h>

#include <random>

#include "bnet/rational.hpp"
#include "bnet/scalar.hpp"

using bnet::Rational;
using bnet::Scalar;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(16, 21) * Rational(21, 16) == Rational(1));
  // 7/9 vs 6/7: cross multiplication 49 < 54.
  CHECK(Rational(7, 9) < Rational(6, 7));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-4, 2).str() == "-2");
  CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
}

TEST_CASE("division by zero reported") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), bnet::Error);
  CHECK_THROWS_AS(Rational(1, 0), bnet::Error);
  CHECK_THROWS_AS(Rational::pow(Rational(0), -1), bnet::Error);
}

TEST_CASE("parsing fractions, integers and decimals") {
  CHECK(Rational::parse("7/9") == Rational(7, 9));
  CHECK(Rational::parse("-7/9") == Rational(-7, 9));
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse(" 0.125 ") == Rational(1, 8));
  CHECK(Rational::parse("-1.25e-2") == Rational(-1, 80));
  CHECK(Rational::parse("2.5E2") == Rational(250));
  CHECK_THROWS_AS(Rational::parse("abc"), bnet::Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), bnet::Error);
  CHECK_THROWS_AS(Rational::parse(""), bnet::Error);
}

TEST_CASE("rendering round trip") {
  for (long n = -12; n <= 12; ++n)
    for (long d = 1; d <= 9; ++d) {
      Rational r(n, d);
      CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("pow with negative exponents") {
  CHECK(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(Rational::pow(Rational(5), 0) == Rational(1));
}

TEST_CASE("continued-fraction snap recovers small fractions") {
  auto r = Rational::nearest(7.0 / 9.0, 1000000);
  REQUIRE(r.has_value());
  CHECK(*r == Rational(7, 9));
  auto s = Rational::nearest(0.960749, 1000);  // no small fraction nearby
  REQUIRE(s.has_value());
  CHECK(std::abs(s->to_double() - 0.960749) < 1e-3);
  auto neg = Rational::nearest(-0.875, 64);
  REQUIRE(neg.has_value());
  CHECK(*neg == Rational(-7, 8));
}

TEST_CASE("random cross-multiplication identities") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
  for (int it = 0; it < 500; ++it) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational lhs = Rational(a, b) + Rational(c, d);
    CHECK(lhs == Rational(a * d + c * b, b * d));
    CHECK(Rational(a, b) * Rational(c, d) == Rational(a * c, b * d));
    bool lt = a * d < c * b;
    CHECK((Rational(a, b) < Rational(c, d)) == lt);
  }
}

TEST_CASE("exact scalars compare exactly, approx within tolerance") {
  Scalar a{Rational(1, 3)};
  Scalar b{Rational(1, 3)};
  CHECK(a == b);
  CHECK(Scalar{Rational(1, 3)} < Scalar{Rational(2, 3)});

  Scalar x = Scalar::approx(0.5, 1e-9);
  Scalar y = Scalar::approx(0.5 + 2e-10, 1e-9);
  CHECK(x == y);
  CHECK(Scalar::approx(0.5) < Scalar::approx(0.5 + 1e-6));
}

TEST_CASE("scalar arithmetic promotes to approx") {
  Scalar e{Rational(1, 4)};
  Scalar a = Scalar::approx(0.25);
  CHECK((e + e).exact());
  CHECK_FALSE((e + a).exact());
  CHECK((e + a).value() == doctest::Approx(0.5));
  CHECK_THROWS_AS(e / Scalar{Rational(0)}, bnet::Error);
}

TEST_CASE("rational to approx never flips clear strict orderings") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  const double tol = Scalar::kDefaultTol;
  for (int it = 0; it < 1000; ++it) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if ((b - a).to_double() <= 2 * tol) continue;  // gap too small to ask about
    Scalar sa = Scalar::approx(a.to_double());
    Scalar sb = Scalar::approx(b.to_double());
    CHECK(sa < sb);
  }
}
