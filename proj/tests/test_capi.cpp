// Exercises the shared-library surface the way a foreign-language binding
// would: only nsbox/nsbox.h, no C++ headers from the library.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "nsbox/nsbox.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  nsx_string_free(s);
  return out;
}

struct Box {
  nsx_box* p;
  explicit Box(nsx_box* q) : p(q) {}
  ~Box() { nsx_box_free(p); }
  Box(const Box&) = delete;
  Box& operator=(const Box&) = delete;
};

struct Wire {
  nsx_wiring* p;
  explicit Wire(nsx_wiring* q) : p(q) {}
  ~Wire() { nsx_wiring_free(p); }
  Wire(const Wire&) = delete;
  Wire& operator=(const Wire&) = delete;
};

}  // namespace

TEST_CASE("version string is present") {
  const char* v = nsx_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("box construction, shape, entries") {
  Box b(nsx_box_make_d(3));
  REQUIRE(b.p != nullptr);
  int xs = 0, ys = 0, as = 0, bs = 0;
  CHECK(nsx_box_shape(b.p, &xs, &ys, &as, &bs) == 0);
  CHECK(xs == 2);
  CHECK(ys == 2);
  CHECK(as == 3);
  CHECK(bs == 3);
  CHECK(take(nsx_box_entry(b.p, 1, 1, 0, 1)) == "1/3");
  CHECK(take(nsx_box_entry(b.p, 1, 1, 0, 0)) == "0/1");
  CHECK(nsx_box_entry(b.p, 9, 0, 0, 0) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bad construction sets the thread error slot") {
  CHECK(nsx_box_make_d(0) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
  REQUIRE(nsx_last_error_message() != nullptr);
  CHECK(std::string(nsx_last_error_message()).find("d") != std::string::npos);
  Box ok(nsx_box_make_d(2));
  REQUIRE(ok.p != nullptr);
  CHECK(nsx_last_error_code() == NSX_OK);
}

TEST_CASE("write and parse round-trip") {
  Box b(nsx_box_make_d(4));
  const std::string text = take(nsx_box_write(b.p));
  Box back(nsx_box_parse(text.c_str(), 1));
  REQUIRE(back.p != nullptr);
  CHECK(nsx_box_equal(b.p, back.p) == 1);
  Box other(nsx_box_make_d(3));
  CHECK(nsx_box_equal(b.p, other.p) == 0);
}

TEST_CASE("parse errors report a line") {
  CHECK(nsx_box_parse("nsbox 1\nsizes 2 2\n", 1) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_PARSE);
  CHECK(std::string(nsx_last_error_message()).find("line") != std::string::npos);
}

TEST_CASE("no-signaling check with report") {
  Box b(nsx_box_make_d(2));
  char* report = nullptr;
  CHECK(nsx_box_check_no_signaling(b.p, 0, &report) == 1);
  take(report);
  CHECK(nsx_box_check_no_signaling(b.p, 1, nullptr) == 1);

  // alice's output copies y: one-way signaling
  const char* doc =
      "nsbox 1\n"
      "sizes 2 2 2 1\n"
      "p 0 0 0 0 1/1\n"
      "p 0 1 1 0 1/1\n"
      "p 1 0 0 0 1/1\n"
      "p 1 1 1 0 1/1\n";
  Box s(nsx_box_parse(doc, 0));
  REQUIRE(s.p != nullptr);
  char* why = nullptr;
  CHECK(nsx_box_check_no_signaling(s.p, 0, &why) == 0);
  CHECK(take(why).find("signal") != std::string::npos);
}

TEST_CASE("document verification distinguishes parse from semantics") {
  Box b(nsx_box_make_d(2));
  const std::string good = take(nsx_box_write(b.p));
  char* rep = nullptr;
  CHECK(nsx_verify_box_document(good.c_str(), 0, &rep) == 1);
  take(rep);

  const char* unnormalized =
      "nsbox 1\n"
      "sizes 1 1 2 1\n"
      "p 0 0 0 0 1/4\n"
      "p 0 0 1 0 1/4\n";
  char* why = nullptr;
  CHECK(nsx_verify_box_document(unnormalized, 0, &why) == 0);
  CHECK(take(why).find("sums to") != std::string::npos);

  CHECK(nsx_verify_box_document("nsbox 9\n", 0, nullptr) == -1);
  CHECK(nsx_last_error_code() == NSX_ERR_PARSE);
}

TEST_CASE("distances and the game functional") {
  Box pr(nsx_box_make_d(2));
  Box pr2(nsx_box_make_d(2));
  CHECK(take(nsx_box_total_variation(pr.p, pr2.p)) == "0/1");
  CHECK(take(nsx_box_game_win_probability(pr.p)) == "1/1");
  Box d3(nsx_box_make_d(3));
  CHECK(nsx_box_total_variation(pr.p, d3.p) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_SHAPE_MISMATCH);
}

TEST_CASE("protocol 2 reduction through the C surface") {
  Box six(nsx_box_make_d(6));
  Box three(nsx_box_protocol2(six.p, 3));
  REQUIRE(three.p != nullptr);
  Box expect(nsx_box_make_d(3));
  CHECK(nsx_box_equal(three.p, expect.p) == 1);
  CHECK(nsx_box_protocol2(six.p, 4) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("protocol 3 approximation and its error") {
  char* tv = nullptr;
  Box approx(nsx_protocol3_box(2, 2, 3, &tv));
  REQUIRE(approx.p != nullptr);
  CHECK(take(tv) == "1/4");
  char* tv0 = nullptr;
  Box exact(nsx_protocol3_box(2, 2, 4, &tv0));
  REQUIRE(exact.p != nullptr);
  CHECK(take(tv0) == "0/1");
  Box four(nsx_box_make_d(4));
  CHECK(nsx_box_equal(exact.p, four.p) == 1);
}

TEST_CASE("product wiring through the C surface") {
  Box a(nsx_box_make_d(2));
  Box b(nsx_box_make_d(3));
  Wire w(nsx_wiring_protocol1(a.p, b.p));
  REQUIRE(w.p != nullptr);
  Box eff(nsx_wiring_effective_box(w.p));
  REQUIRE(eff.p != nullptr);
  Box six(nsx_box_make_d(6));
  CHECK(nsx_box_equal(eff.p, six.p) == 1);
}

TEST_CASE("round wirings, conditioning, cycles") {
  Wire w(nsx_wiring_round("p4", 2, 0));
  REQUIRE(w.p != nullptr);
  char* success = nullptr;
  Box cond(nsx_wiring_condition(w.p, &success));
  REQUIRE(cond.p != nullptr);
  CHECK(take(success) == "3/4");
  Box three(nsx_box_make_d(3));
  CHECK(nsx_box_equal(cond.p, three.p) == 1);

  const std::string cyc = take(nsx_wiring_cycles(w.p, 1));
  CHECK(cyc.find("lengths: 1,3") != std::string::npos);

  Wire w5(nsx_wiring_round("p4", 5, 0));
  const std::string cyc5 = take(nsx_wiring_cycles(w5.p, 1));
  CHECK(cyc5.find("lengths: 1,6,6,6,6") != std::string::npos);

  CHECK(nsx_wiring_round("p9", 2, 0) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("round table text mentions the block weights") {
  Wire w(nsx_wiring_round("p4", 2, 0));
  const std::string table = take(nsx_wiring_round_table(w.p, 1, 1, 0));
  CHECK(table.find("1/4") != std::string::npos);
}

TEST_CASE("wiring write and parse round-trip") {
  Wire w(nsx_wiring_round("threshold", 5, 2));
  const std::string text = take(nsx_wiring_write(w.p));
  Wire back(nsx_wiring_parse(text.c_str(), 1));
  REQUIRE(back.p != nullptr);
  CHECK(nsx_wiring_equal(w.p, back.p) == 1);
  CHECK(nsx_wiring_parse("nswire 7\n", 1) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_PARSE);
}

TEST_CASE("plans render, price, and execute") {
  nsx_plan* plan = nsx_plan_make(2, 5);
  REQUIRE(plan != nullptr);
  CHECK(take(nsx_plan_consumption(plan)) == "48/5");
  const std::string lines = take(nsx_plan_render(plan, 1));
  CHECK(lines.find("plan 2 5") != std::string::npos);
  CHECK(nsx_plan_execute(plan) == 1);
  nsx_plan_free(plan);

  CHECK(nsx_plan_make(1, 2) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_NO_PLAN);
}

TEST_CASE("sampling summary through the C surface") {
  char* out = nsx_simulate("p4", 2, 0, 1, 1, 200, 7, "alt", 0);
  const std::string text = take(out);
  CHECK(text.find("chi-square") != std::string::npos);
  CHECK(nsx_simulate("p4", 2, 0, 1, 1, 0, 7, "alt", 0) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
  CHECK(nsx_simulate("p4", 2, 0, 1, 1, 10, 7, "sideways", 0) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("null handles are rejected, not dereferenced") {
  CHECK(nsx_box_write(nullptr) == nullptr);
  CHECK(nsx_last_error_code() == NSX_ERR_INVALID_ARGUMENT);
  CHECK(nsx_box_equal(nullptr, nullptr) == -1);
  CHECK(nsx_wiring_effective_box(nullptr) == nullptr);
  CHECK(nsx_plan_render(nullptr, 0) == nullptr);
  int xs, ys, as, bs;
  CHECK(nsx_box_shape(nullptr, &xs, &ys, &as, &bs) == -1);
  nsx_box_free(nullptr);
  nsx_wiring_free(nullptr);
  nsx_plan_free(nullptr);
  nsx_string_free(nullptr);
}
