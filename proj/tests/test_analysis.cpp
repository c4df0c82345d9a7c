#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nsbox/analysis.hpp"
#include "nsbox/analysis_util.hpp"
#include "nsbox/box.hpp"
#include "nsbox/protocols.hpp"

using namespace nsbox;

namespace {

NsBox coin_box() {
  BoxBuilder b(2, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a) b.set(x, y, a, a, rat(1, 2));
  return std::move(b).build();
}

// (3/4) PR + (1/4) coin: the classic 3/4-winning mixture.
NsBox pr_coin_mixture() {
  BoxBuilder b(2, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          Rational v = rat(3, 4) * make_d_box(2).at(x, y, a, bo);
          if (a == bo) v += rat(1, 4) * rat(1, 2);
          if (!v.is_zero()) b.set(x, y, a, bo, v);
        }
  return std::move(b).build();
}

RoundBlock crossed_block(const Wiring& w, int x, int y) {
  return evaluate_exact(w).block(x, y);
}

}  // namespace

TEST_CASE("permutation extraction from a crossed round") {
  Wiring w = protocol4_round_wiring(2);
  OutputPermutation p = extract_permutation(crossed_block(w, 1, 1));
  CHECK(p.image == std::vector<int>{0, 3, 1, 2});
  CHECK_FALSE(p.is_identity());
  OutputPermutation id = extract_permutation(crossed_block(w, 0, 0));
  CHECK(id.is_identity());
}

TEST_CASE("non-permutation blocks are refused") {
  RoundBlock blk;
  blk.a_sizes = {2};
  blk.b_sizes = {2};
  blk.p = {rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
  try {
    extract_permutation(blk);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_permutation);
  }
  // unequal weights
  RoundBlock skew;
  skew.a_sizes = {2};
  skew.b_sizes = {2};
  skew.p = {rat(1, 3), Rational(0), Rational(0), rat(2, 3)};
  CHECK_THROWS_AS(extract_permutation(skew), Error);
}

TEST_CASE("cycle decomposition") {
  OutputPermutation p{{0, 3, 1, 2}};
  std::vector<std::vector<int>> got = cycles(p);
  REQUIRE(got.size() == 2);
  CHECK(got[0] == std::vector<int>{0});
  CHECK(got[1] == std::vector<int>{1, 3, 2});
  CHECK(cycle_structure(p) == std::vector<int>{1, 3});
  OutputPermutation swap2{{1, 0, 3, 2}};
  CHECK(cycle_structure(swap2) == std::vector<int>{2, 2});
}

TEST_CASE("cycle labeling starts where the leading digit is zero") {
  OutputPermutation p{{0, 3, 1, 2}};
  std::vector<int> labels = derive_cycle_labeling(p, 2);
  CHECK(labels == std::vector<int>{-1, 0, 2, 1});
}

TEST_CASE("relabeling witness for the conditioned crossed round") {
  ConditionedRound round = condition_on_success(protocol4_round_wiring(2));
  auto w = derive_relabeling(round.raw_box, make_d_box(3));
  REQUIRE(w.has_value());
  CHECK(w->alice == std::vector<int>{0, 2, 1});
  CHECK(w->bob == std::vector<int>{0, 2, 1});
}

TEST_CASE("relabeling requires matching shapes") {
  CHECK_THROWS_AS(derive_relabeling(make_d_box(2), make_d_box(3)), Error);
}

TEST_CASE("relabeling search respects its budget") {
  // 11 outputs would need 11! > 5e6 candidate maps
  BoxBuilder b1(1, 1, 11, 11), b2(1, 1, 11, 11);
  for (int a = 0; a < 11; ++a) {
    b1.set(0, 0, a, a, rat(1, 11));
    b2.set(0, 0, a, a, rat(1, 11));
  }
  try {
    derive_relabeling(std::move(b1).build(), std::move(b2).build());
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("relabeling finds nothing between inequivalent boxes") {
  CHECK_FALSE(derive_relabeling(make_d_box(2), coin_box()).has_value());
}

TEST_CASE("deterministic input deletion") {
  // extend the PR box with a third Alice input that always outputs 0
  BoxBuilder b(3, 2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          Rational v = make_d_box(2).at(x, y, a, bo);
          if (!v.is_zero()) b.set(x, y, a, bo, v);
        }
  for (int y = 0; y < 2; ++y)
    for (int bo = 0; bo < 2; ++bo) b.set(2, y, 0, bo, rat(1, 2));
  NsBox extended = std::move(b).build();
  ReducedBox red = delete_deterministic_inputs(extended);
  CHECK(red.kept_x == std::vector<int>{0, 1});
  CHECK(red.kept_y == std::vector<int>{0, 1});
  CHECK(red.box == make_d_box(2));
}

TEST_CASE("box equivalence") {
  SUBCASE("reflexive") {
    CHECK(boxes_equivalent(make_d_box(2), make_d_box(2)).has_value());
    CHECK(boxes_equivalent(make_d_box(3), make_d_box(3)).has_value());
  }
  SUBCASE("party swap") {
    // transposing the PR box swaps a/b; still the same resource
    CHECK(boxes_equivalent(transpose_parties(make_d_box(2)), make_d_box(2)).has_value());
  }
  SUBCASE("per-input output relabeling") {
    BoxBuilder b(2, 2, 2, 2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int bo = 0; bo < 2; ++bo) {
            Rational v = make_d_box(2).at(x, y, a, bo);
            if (!v.is_zero()) b.set(x, y, x == 1 ? 1 - a : a, bo, v);
          }
    NsBox flipped = std::move(b).build();
    auto eq = boxes_equivalent(flipped, make_d_box(2));
    REQUIRE(eq.has_value());
    CHECK(eq->alice_output_maps[1] == std::vector<int>{1, 0});
  }
  SUBCASE("deterministic inputs do not matter") {
    BoxBuilder b(3, 2, 2, 2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int bo = 0; bo < 2; ++bo) {
            Rational v = make_d_box(2).at(x, y, a, bo);
            if (!v.is_zero()) b.set(x, y, a, bo, v);
          }
    for (int y = 0; y < 2; ++y)
      for (int bo = 0; bo < 2; ++bo) b.set(2, y, 1, bo, rat(1, 2));
    CHECK(boxes_equivalent(std::move(b).build(), make_d_box(2)).has_value());
  }
  SUBCASE("different resources are not equivalent") {
    CHECK_FALSE(boxes_equivalent(make_d_box(2), make_d_box(3)).has_value());
    CHECK_FALSE(boxes_equivalent(make_d_box(2), coin_box()).has_value());
  }
}

TEST_CASE("total variation distance") {
  CHECK(total_variation(make_d_box(2), make_d_box(2)) == Rational(0));
  CHECK(total_variation(make_d_box(2), coin_box()) == Rational(1));
  CHECK(total_variation(make_d_box(2), pr_coin_mixture()) == rat(1, 4));
}

TEST_CASE("game win probability") {
  for (int d = 1; d <= 5; ++d) CHECK(game_win_probability(make_d_box(d)) == Rational(1));
  CHECK(game_win_probability(coin_box()) == Rational(0));
  CHECK(game_win_probability(pr_coin_mixture()) == rat(3, 4));
}
