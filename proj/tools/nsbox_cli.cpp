// Command-line front end. Talks to the library exclusively through the C API.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nsbox/nsbox.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Owned C string that frees itself.
struct CStr {
  char* p = nullptr;
  ~CStr() { nsx_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct BoxHandle {
  nsx_box* p = nullptr;
  ~BoxHandle() { nsx_box_free(p); }
};

struct WiringHandle {
  nsx_wiring* p = nullptr;
  ~WiringHandle() { nsx_wiring_free(p); }
};

struct PlanHandle {
  nsx_plan* p = nullptr;
  ~PlanHandle() { nsx_plan_free(p); }
};

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int api_error() { return usage_error(nsx_last_error_message()); }

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

// Writes to `path`, or to stdout when the path is empty.
int emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kExitPass;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) return usage_error("cannot write " + path);
  return kExitPass;
}

// Shared flags of the subcommands that operate on a wiring.
struct WiringArgs {
  std::string protocol;
  std::string wiring_path;
  int d = 0;
  int d2 = -1;
  int s = 1;

  void attach(CLI::App* cmd, bool with_p1) {
    auto* proto = cmd->add_option("--protocol", protocol,
                                  with_p1 ? "p1, p4, two-zero, or threshold"
                                          : "p4, two-zero, or threshold");
    auto* file = cmd->add_option("--wiring", wiring_path, "read the wiring from a file");
    auto* dopt = cmd->add_option("--d", d, "box size");
    cmd->add_option("--d2", d2, "second box size for p1 (default: --d)");
    cmd->add_option("--s", s, "threshold for the threshold protocol");
    proto->excludes(file);
    dopt->needs(proto);
  }

  // Builds or loads the wiring; returns false with the exit code in *code.
  bool resolve(WiringHandle* out, int* code) const {
    if (protocol.empty() == wiring_path.empty()) {
      *code = usage_error("give exactly one of --protocol and --wiring");
      return false;
    }
    if (!wiring_path.empty()) {
      std::string text;
      if (!read_file(wiring_path, &text)) {
        *code = usage_error("cannot read " + wiring_path);
        return false;
      }
      out->p = nsx_wiring_parse(text.c_str(), 0);
    } else if (protocol == "p1") {
      BoxHandle b1, b2;
      b1.p = nsx_box_make_d(d);
      if (b1.p == nullptr) {
        *code = api_error();
        return false;
      }
      b2.p = nsx_box_make_d(d2 < 0 ? d : d2);
      if (b2.p == nullptr) {
        *code = api_error();
        return false;
      }
      out->p = nsx_wiring_protocol1(b1.p, b2.p);
    } else {
      out->p = nsx_wiring_round(protocol.c_str(), d, s);
    }
    if (out->p == nullptr) {
      *code = api_error();
      return false;
    }
    return true;
  }
};

int cmd_make_box(int d, const std::string& out_path) {
  BoxHandle box;
  box.p = nsx_box_make_d(d);
  if (box.p == nullptr) return api_error();
  CStr text;
  text.p = nsx_box_write(box.p);
  if (text.p == nullptr) return api_error();
  return emit(out_path, text.str());
}

int cmd_verify(const std::string& box_path, bool machine) {
  std::string text;
  if (!read_file(box_path, &text)) return usage_error("cannot read " + box_path);
  CStr report;
  int rc = nsx_verify_box_document(text.c_str(), machine ? 1 : 0, &report.p);
  if (rc < 0) return api_error();
  std::cout << report.str();
  return rc == 1 ? kExitPass : kExitFail;
}

int cmd_round_table(const WiringArgs& wa, int x, int y, bool machine) {
  WiringHandle w;
  int code = 0;
  if (!wa.resolve(&w, &code)) return code;
  CStr table;
  table.p = nsx_wiring_round_table(w.p, x, y, machine ? 1 : 0);
  if (table.p == nullptr) return api_error();
  std::cout << table.str();
  return kExitPass;
}

int cmd_cycles(const WiringArgs& wa, bool machine) {
  WiringHandle w;
  int code = 0;
  if (!wa.resolve(&w, &code)) return code;
  CStr report;
  report.p = nsx_wiring_cycles(w.p, machine ? 1 : 0);
  if (report.p == nullptr) return api_error();
  std::cout << report.str();
  return kExitPass;
}

int cmd_convert(int from, int to, bool plan_only, bool machine) {
  PlanHandle plan;
  plan.p = nsx_plan_make(from, to);
  if (plan.p == nullptr) return api_error();
  CStr rendered;
  rendered.p = nsx_plan_render(plan.p, machine ? 1 : 0);
  if (rendered.p == nullptr) return api_error();
  std::cout << rendered.str();
  if (plan_only) return kExitPass;
  int rc = nsx_plan_execute(plan.p);
  if (rc < 0) return api_error();
  if (machine) {
    std::cout << "result " << (rc == 1 ? "pass" : "fail") << "\n";
  } else {
    std::cout << "verification: " << (rc == 1 ? "PASS" : "FAIL") << "\n";
  }
  return rc == 1 ? kExitPass : kExitFail;
}

int cmd_sample(const std::string& protocol, int d, int s, int x, int y, long long trials,
               uint64_t seed, const std::string& schedule, bool machine) {
  CStr report;
  report.p = nsx_simulate(protocol.c_str(), d, s, x, y, trials, seed, schedule.c_str(),
                          machine ? 1 : 0);
  if (report.p == nullptr) return api_error();
  std::cout << report.str();
  return kExitPass;
}

int cmd_make_wiring(const WiringArgs& wa, const std::string& out_path) {
  WiringHandle w;
  int code = 0;
  if (!wa.resolve(&w, &code)) return code;
  CStr text;
  text.p = nsx_wiring_write(w.p);
  if (text.p == nullptr) return api_error();
  return emit(out_path, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"no-signaling box toolkit (exact rational arithmetic)"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.\n"
             "Rationals are printed exactly as num/den.");
  int exit_code = kExitPass;

  auto* mk = app.add_subcommand("make-box", "write the d-box as an .nsbox document");
  int mk_d = 0;
  std::string mk_out;
  mk->add_option("--d", mk_d, "box size (outputs 0..d-1)")->required();
  mk->add_option("--out", mk_out, "output path (default: stdout)");
  mk->callback([&] { exit_code = cmd_make_box(mk_d, mk_out); });

  auto* vf = app.add_subcommand("verify", "check an .nsbox document (normalization, no-signaling)");
  std::string vf_box;
  bool vf_machine = false;
  vf->add_option("--box", vf_box, ".nsbox file")->required();
  vf->add_flag("--machine", vf_machine, "machine-readable output");
  vf->callback([&] { exit_code = cmd_verify(vf_box, vf_machine); });

  auto* rt = app.add_subcommand("round-table", "print the exact joint output distribution");
  WiringArgs rt_w;
  int rt_x = -1, rt_y = -1;
  bool rt_machine = false;
  rt_w.attach(rt, true);
  auto* rt_xo = rt->add_option("--x", rt_x, "Alice input (default: all blocks)");
  auto* rt_yo = rt->add_option("--y", rt_y, "Bob input");
  rt_xo->needs(rt_yo);
  rt_yo->needs(rt_xo);
  rt->add_flag("--machine", rt_machine, "machine-readable output");
  rt->callback([&] { exit_code = cmd_round_table(rt_w, rt_x, rt_y, rt_machine); });

  auto* cy = app.add_subcommand("cycles", "cycle structure of the x=y=1 block");
  WiringArgs cy_w;
  bool cy_machine = false;
  cy_w.attach(cy, false);
  cy->add_flag("--machine", cy_machine, "machine-readable output");
  cy->callback([&] { exit_code = cmd_cycles(cy_w, cy_machine); });

  auto* cv = app.add_subcommand("convert", "plan and verify a box interconversion");
  int cv_from = 0, cv_to = 0;
  bool cv_plan_only = false, cv_machine = false;
  cv->add_option("--from", cv_from, "source box size")->required();
  cv->add_option("--to", cv_to, "target box size")->required();
  cv->add_flag("--plan-only", cv_plan_only, "print the plan without executing it");
  cv->add_flag("--machine", cv_machine, "machine-readable output");
  cv->callback([&] { exit_code = cmd_convert(cv_from, cv_to, cv_plan_only, cv_machine); });

  auto* sm = app.add_subcommand("sample", "repeat-until-success simulation of a round wiring");
  std::string sm_protocol, sm_schedule = "alt";
  int sm_d = 0, sm_s = 1, sm_x = 1, sm_y = 1;
  long long sm_trials = 0;
  uint64_t sm_seed = 0;
  sm->add_option("--protocol", sm_protocol, "p4, two-zero, or threshold")->required();
  sm->add_option("--d", sm_d, "box size")->required();
  sm->add_option("--s", sm_s, "threshold for the threshold protocol");
  sm->add_option("--x", sm_x, "Alice input (default 1)");
  sm->add_option("--y", sm_y, "Bob input (default 1)");
  sm->add_option("--trials", sm_trials, "number of repeat-until-success trials")->required();
  sm->add_option("--seed", sm_seed, "master seed (explicit, for reproducibility)")->required();
  sm->add_option("--schedule", sm_schedule, "alt, alice-first, or bob-first")
      ->check(CLI::IsMember({"alt", "alice-first", "bob-first"}));
  bool sm_machine = false;
  sm->add_flag("--machine", sm_machine, "machine-readable output");
  sm->callback([&] {
    exit_code = cmd_sample(sm_protocol, sm_d, sm_s, sm_x, sm_y, sm_trials, sm_seed,
                           sm_schedule, sm_machine);
  });

  auto* mw = app.add_subcommand("make-wiring", "write a protocol wiring as an .nswire document");
  WiringArgs mw_w;
  std::string mw_out;
  mw_w.attach(mw, true);
  mw->add_option("--out", mw_out, "output path (default: stdout)");
  mw->callback([&] { exit_code = cmd_make_wiring(mw_w, mw_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }
  return exit_code;
}
