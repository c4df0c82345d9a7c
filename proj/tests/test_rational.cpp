#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "nsbox/rational.hpp"

using nsbox::BigInt;
using nsbox::Rational;
using nsbox::rat;

TEST_CASE("construction canonicalizes") {
  CHECK(rat(2, 4).str() == "1/2");
  CHECK(rat(-1, -2).str() == "1/2");
  CHECK(rat(1, -2).str() == "-1/2");
  CHECK(rat(0, 7).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
  CHECK(Rational(0).is_zero());
  CHECK_FALSE(rat(1, 3).is_zero());
}

TEST_CASE("zero denominator is rejected") {
  CHECK_THROWS_AS(rat(1, 0), nsbox::Error);
  try {
    rat(1, 0);
  } catch (const nsbox::Error& e) {
    CHECK(e.code() == nsbox::Errc::zero_denominator);
  }
}

TEST_CASE("arithmetic is exact") {
  CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
  CHECK(rat(2, 3) * rat(3, 4) == rat(1, 2));
  CHECK(rat(1, 2) / rat(1, 3) == rat(3, 2));
  CHECK(rat(1, 2) - rat(1, 2) == Rational(0));
  CHECK(-rat(1, 2) == rat(-1, 2));
  Rational acc = 0;
  for (int i = 0; i < 10; ++i) acc += rat(1, 10);
  CHECK(acc == Rational(1));
}

TEST_CASE("comparisons") {
  CHECK(rat(1, 3) < rat(1, 2));
  CHECK(rat(1, 2) <= rat(2, 4));
  CHECK(rat(3, 2) > Rational(1));
  CHECK(rat(-1, 2) < Rational(0));
  CHECK(rat(1, 3) != rat(1, 4));
}

TEST_CASE("big values stay exact") {
  const BigInt big("123456789012345678901234567890");
  Rational r(big, BigInt(1));
  CHECK(r.str() == "123456789012345678901234567890/1");
  Rational half = r / Rational(2);
  CHECK(half * Rational(2) == r);
  // 1/2^200 + 1/2^200 == 1/2^199, no rounding anywhere
  Rational tiny(BigInt(1), BigInt(1) << 200);
  CHECK(tiny + tiny == Rational(BigInt(1), BigInt(1) << 199));
}

TEST_CASE("accessors and printing") {
  Rational r = rat(-3, 6);
  CHECK(r.num() == BigInt(-1));
  CHECK(r.den() == BigInt(2));
  CHECK(r.abs() == rat(1, 2));
  CHECK(r.to_double() == doctest::Approx(-0.5));
  std::ostringstream os;
  os << r;
  CHECK(os.str() == "-1/2");
}
