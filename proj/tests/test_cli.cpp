// Drives the installed binary through a shell, checking text and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(NSBOX_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  REQUIRE(status >= 0);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path tmpdir() {
  static const std::filesystem::path dir = [] {
    auto p = std::filesystem::temp_directory_path() /
             ("nsbox_cli_test_" + std::to_string(getpid()));
    std::filesystem::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const auto path = tmpdir() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("make-box emits the reference document byte for byte") {
  RunResult r = run("make-box --d 3");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(std::string(NSBOX_FIXTURE_DIR) + "/d3.nsbox"));
}

TEST_CASE("make-box rejects a bad size with the usage exit code") {
  RunResult r = run("make-box --d 0");
  CHECK(r.code == 2);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("make-box writes to a file") {
  const auto out = (tmpdir() / "d4.nsbox").string();
  RunResult r = run("make-box --d 4 --out " + out);
  CHECK(r.code == 0);
  RunResult direct = run("make-box --d 4");
  CHECK(slurp(out) == direct.out);
}

TEST_CASE("verify exit codes separate pass, semantic fail, parse fail") {
  const auto good = (tmpdir() / "good.nsbox").string();
  REQUIRE(run("make-box --d 3 --out " + good).code == 0);
  RunResult pass = run("verify --box " + good);
  CHECK(pass.code == 0);
  CHECK(pass.out.find("result: pass") != std::string::npos);

  RunResult machine = run("verify --box " + good + " --machine");
  CHECK(machine.code == 0);
  CHECK(machine.out.find("result pass") != std::string::npos);

  const std::string bad = write_tmp("unnormalized.nsbox",
                                    "nsbox 1\n"
                                    "sizes 1 1 2 1\n"
                                    "p 0 0 0 0 1/4\n"
                                    "p 0 0 1 0 1/4\n");
  RunResult fail = run("verify --box " + bad);
  CHECK(fail.code == 1);
  CHECK(fail.out.find("sums to") != std::string::npos);
  CHECK(fail.out.find("result: fail") != std::string::npos);

  const std::string junk = write_tmp("junk.nsbox", "nsbox 9\n");
  CHECK(run("verify --box " + junk).code == 2);

  CHECK(run("verify --box /no/such/file.nsbox").code == 2);
}

TEST_CASE("cycles report over the crossed round") {
  RunResult r = run("cycles --protocol p4 --d 5 --machine");
  CHECK(r.code == 0);
  CHECK(r.out.find("lengths: 1,6,6,6,6") != std::string::npos);
  RunResult two = run("cycles --protocol two-zero --d 5 --machine");
  CHECK(two.code == 0);
  CHECK(two.out.find("lengths: 1,1,23") != std::string::npos);
}

TEST_CASE("convert prints the machine plan exactly") {
  RunResult r = run("convert --from 2 --to 3 --machine");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "plan 2 3\n"
        "step 1 p4 2 3 0 3/4 2\n"
        "expected-consumption 8/3\n"
        "result pass\n");
}

TEST_CASE("converting a size to itself is a free plan") {
  RunResult r = run("convert --from 3 --to 3 --machine");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "plan 3 3\n"
        "expected-consumption 1/1\n"
        "result pass\n");
}

TEST_CASE("convert --plan-only stops before execution") {
  RunResult r = run("convert --from 3 --to 10 --machine --plan-only");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "plan 3 10\n"
        "step 1 two-zero 3 7 0 7/9 2\n"
        "step 2 threshold 7 10 3 40/49 2\n"
        "expected-consumption 63/10\n");
}

TEST_CASE("an impossible conversion is reported as a usage error") {
  RunResult r = run("convert --from 1 --to 2");
  CHECK(r.code == 2);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("sampling is reproducible from the seed") {
  const std::string args =
      "sample --protocol p4 --d 2 --trials 50 --seed 7 --machine";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("chi-square") != std::string::npos);
  RunResult c = run("sample --protocol p4 --d 2 --trials 50 --seed 8 --machine");
  CHECK(c.out != a.out);
}

TEST_CASE("sample validates its schedule and required flags") {
  CHECK(run("sample --protocol p4 --d 2 --trials 10 --seed 1 --schedule sideways").code == 2);
  CHECK(run("sample --protocol p4 --d 2 --trials 10").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("make-box --d 2 --bogus").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("round-table prints exact block weights") {
  RunResult r = run("round-table --protocol p4 --d 2 --x 1 --y 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("1/4") != std::string::npos);
}

TEST_CASE("a saved wiring reproduces the built one") {
  const auto wire = (tmpdir() / "p4d2.nswire").string();
  REQUIRE(run("make-wiring --protocol p4 --d 2 --out " + wire).code == 0);
  RunResult from_file = run("round-table --wiring " + wire + " --x 1 --y 1 --machine");
  RunResult direct = run("round-table --protocol p4 --d 2 --x 1 --y 1 --machine");
  CHECK(from_file.code == 0);
  CHECK(from_file.out == direct.out);
}

TEST_CASE("round-table wants a complete input pair") {
  CHECK(run("round-table --protocol p4 --d 2 --x 1").code == 2);
}
