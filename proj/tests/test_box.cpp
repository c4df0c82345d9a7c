#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nsbox/box.hpp"

using namespace nsbox;

namespace {

// 1/2 on (a,a) for every input pair: two perfectly correlated fair coins.
NsBox coin_box() {
  BoxBuilder b(2, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a) b.set(x, y, a, a, rat(1, 2));
  return std::move(b).build();
}

// Alice's output copies Bob's input: blocks normalize but the box signals.
NsBox signaling_box() {
  BoxBuilder b(2, 2, 2, 1);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) b.set(x, y, y, 0, Rational(1));
  return std::move(b).build();
}

}  // namespace

TEST_CASE("d=1 box is the deterministic box") {
  NsBox box = make_d_box(1);
  CHECK(box.x_size() == 2);
  CHECK(box.y_size() == 2);
  CHECK(box.a_size() == 1);
  CHECK(box.b_size() == 1);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(box.at(x, y, 0, 0) == Rational(1));
}

TEST_CASE("d=2 box correlations") {
  NsBox box = make_d_box(2);
  // outputs agree unless both inputs are 1
  CHECK(box.at(0, 0, 0, 0) == rat(1, 2));
  CHECK(box.at(0, 0, 0, 1) == Rational(0));
  CHECK(box.at(0, 1, 1, 1) == rat(1, 2));
  CHECK(box.at(1, 0, 1, 1) == rat(1, 2));
  CHECK(box.at(1, 1, 0, 1) == rat(1, 2));
  CHECK(box.at(1, 1, 1, 0) == rat(1, 2));
  CHECK(box.at(1, 1, 0, 0) == Rational(0));
  CHECK(box.at(1, 1, 1, 1) == Rational(0));
}

TEST_CASE("d=3 box puts mass exactly where b-a = xy mod 3") {
  NsBox box = make_d_box(3);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const bool on = (b - a + 3) % 3 == x * y;
          CHECK(box.at(x, y, a, b) == (on ? rat(1, 3) : Rational(0)));
        }
}

TEST_CASE("make_d_box rejects d < 1") {
  CHECK_THROWS_AS(make_d_box(0), Error);
  CHECK_THROWS_AS(make_d_box(-2), Error);
}

TEST_CASE("constructor enforces the distribution invariants") {
  SUBCASE("negative entry") {
    std::vector<Rational> e = {rat(3, 2), rat(-1, 2), Rational(0), Rational(0)};
    CHECK_THROWS_AS(NsBox(1, 1, 2, 2, e), Error);
  }
  SUBCASE("entry above one") {
    std::vector<Rational> e = {rat(3, 2), Rational(0), Rational(0), Rational(0)};
    CHECK_THROWS_AS(NsBox(1, 1, 2, 2, e), Error);
  }
  SUBCASE("block sum below one") {
    std::vector<Rational> e = {rat(1, 2), Rational(0), Rational(0), Rational(0)};
    CHECK_THROWS_AS(NsBox(1, 1, 2, 2, e), Error);
  }
  SUBCASE("size mismatch") {
    std::vector<Rational> e = {Rational(1)};
    CHECK_THROWS_AS(NsBox(1, 1, 2, 2, e), Error);
  }
  SUBCASE("degenerate sizes") {
    std::vector<Rational> e = {Rational(1)};
    CHECK_THROWS_AS(NsBox(0, 1, 1, 1, e), Error);
  }
}

TEST_CASE("builder accumulates with add") {
  BoxBuilder b(1, 1, 2, 2);
  b.add(0, 0, 0, 0, rat(1, 4));
  b.add(0, 0, 0, 0, rat(1, 4));
  b.set(0, 0, 1, 1, rat(1, 2));
  NsBox box = std::move(b).build();
  CHECK(box.at(0, 0, 0, 0) == rat(1, 2));
}

TEST_CASE("no-signaling check passes d-boxes and the coin box") {
  for (int d = 1; d <= 6; ++d) CHECK(check_no_signaling(make_d_box(d)).pass);
  CHECK(check_no_signaling(coin_box()).pass);
}

TEST_CASE("no-signaling check reports the violated marginal") {
  NsReport rep = check_no_signaling(signaling_box());
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.violations.empty());
  const NsViolation& v = rep.violations.front();
  CHECK(v.signaling_party == Party::bob);  // Bob's input moves Alice's marginal
  CHECK(v.sum_a != v.sum_b);
  CHECK(v.describe().find("signals") != std::string::npos);
}

TEST_CASE("marginals") {
  std::vector<Rational> m = marginal(make_d_box(2), Party::alice, 0);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == rat(1, 2));
  CHECK(m[1] == rat(1, 2));
  std::vector<Rational> mb = marginal(make_d_box(3), Party::bob, 1);
  for (const Rational& v : mb) CHECK(v == rat(1, 3));
  CHECK_THROWS_AS(marginal(signaling_box(), Party::alice, 0), Error);
}

TEST_CASE("conditioning on the partner's outcome") {
  // PR box at (1,1): outputs must differ, so Alice is determined by Bob.
  std::vector<Rational> c = conditional_on_partner(make_d_box(2), Party::alice, 1, 1, 1);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == Rational(1));
  CHECK(c[1] == Rational(0));
  // conditioning on an impossible partner outcome
  BoxBuilder bb(2, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) bb.set(x, y, 0, 0, Rational(1));
  NsBox always_zero = std::move(bb).build();
  CHECK_THROWS_AS(conditional_on_partner(always_zero, Party::alice, 0, 0, 1), Error);
  try {
    conditional_on_partner(always_zero, Party::alice, 0, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_probability);
  }
}

TEST_CASE("boxes compare by value") {
  CHECK(make_d_box(2) == make_d_box(2));
  CHECK(make_d_box(2) != make_d_box(3));
  CHECK(make_d_box(2) != coin_box());
}
