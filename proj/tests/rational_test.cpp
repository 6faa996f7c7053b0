#include <doctest.h>

#include <random>

#include "hac/errors.hpp"
#include "hac/rational.hpp"

using hac::Rational;

TEST_SUITE_BEGIN("rational");

TEST_CASE("canonical form") {
  CHECK(Rational::fraction(6, 4).str() == "3/2");
  CHECK(Rational::fraction(-6, 4).str() == "-3/2");
  CHECK(Rational::fraction(6, -4).str() == "-3/2");
  CHECK(Rational::fraction(-6, -4).str() == "3/2");
  CHECK(Rational::fraction(0, 7).str() == "0");
  CHECK(Rational::fraction(8, 2).str() == "4");
  CHECK_THROWS_AS(Rational::fraction(1, 0), hac::UsageError);
}

TEST_CASE("arithmetic and comparison") {
  Rational a = Rational::fraction(1, 3), b = Rational::fraction(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK(a > b);
  CHECK(b < a);
  CHECK(a == Rational::fraction(2, 6));
  CHECK(Rational(0).is_zero());
  CHECK((-a).str() == "-1/3");
  CHECK_THROWS_AS(a / Rational(0), hac::UsageError);
}

TEST_CASE("parse round-trips") {
  for (const char* s : {"0", "7", "-7", "3/2", "-3/2", "12345/67891"}) {
    Rational r = Rational::parse(s);
    CHECK(Rational::parse(r.str()) == r);
    CHECK(r.str() == s);
  }
  CHECK(Rational::parse("0.5") == Rational::fraction(1, 2));
  CHECK(Rational::parse("-0.25") == Rational::fraction(-1, 4));
  CHECK(Rational::parse("1e-3") == Rational::fraction(1, 1000));
  CHECK(Rational::parse("2.5e2") == Rational(250));
  CHECK(Rational::parse("4/6") == Rational::fraction(2, 3));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/(2)"));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1.2.3"));
}

TEST_CASE("promotion to big integers keeps results exact") {
  // 2^80 by repeated doubling: leaves the int64 fast path.
  Rational two_80(1);
  for (int i = 0; i < 80; i++) two_80 = two_80 * Rational(2);
  CHECK_FALSE(two_80.is_small());
  CHECK(two_80.str() == "1208925819614629174706176");
  Rational back = two_80;
  for (int i = 0; i < 80; i++) back = back / Rational(2);
  CHECK(back == Rational(1));
  CHECK(back.is_small());

  // Tiny denominators likewise.
  Rational tiny = Rational(1) / two_80;
  CHECK((tiny * two_80) == Rational(1));
  CHECK(tiny < Rational::fraction(1, 1000000));
}

TEST_CASE("agrees with GMP across random values") {
  std::mt19937_64 rng(42);
  auto rnd = [&](long long m) { return static_cast<long long>(rng() % m) - m / 2; };
  for (int iter = 0; iter < 2000; iter++) {
    long long a = rnd(1LL << 40), b = rnd(1LL << 40) | 1, c = rnd(1LL << 40), d = rnd(1LL << 40) | 1;
    Rational x = Rational::fraction(a, b), y = Rational::fraction(c, d);
    mpq_class qx = x.to_mpq(), qy = y.to_mpq();
    CHECK((x + y).to_mpq() == qx + qy);
    CHECK((x - y).to_mpq() == qx - qy);
    CHECK((x * y).to_mpq() == qx * qy);
    if (!y.is_zero()) CHECK((x / y).to_mpq() == qx / qy);
    CHECK(x.cmp(y) == (qx < qy ? -1 : (qx > qy ? 1 : 0)));
  }
}

TEST_CASE("double conversion") {
  CHECK(Rational::fraction(1, 2).to_double() == 0.5);
  CHECK(Rational(3).to_double() == 3.0);
}

TEST_SUITE_END();
