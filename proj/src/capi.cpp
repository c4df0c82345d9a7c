#include "nsbox/nsbox.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "nsbox/analysis.hpp"
#include "nsbox/box.hpp"
#include "nsbox/error.hpp"
#include "nsbox/protocols.hpp"
#include "nsbox/render.hpp"
#include "nsbox/serdes.hpp"
#include "nsbox/simulate.hpp"
#include "nsbox/wiring.hpp"

using namespace nsbox;

struct nsx_box {
  NsBox v;
};

struct nsx_wiring {
  Wiring v;
};

struct nsx_plan {
  ConversionPlan v;
};

namespace {

thread_local int g_last_code = NSX_OK;
thread_local std::string g_last_message;

void set_ok() {
  g_last_code = NSX_OK;
  g_last_message.clear();
}

int code_of(Errc e) {
  switch (e) {
    case Errc::invalid_argument: return NSX_ERR_INVALID_ARGUMENT;
    case Errc::zero_denominator: return NSX_ERR_ZERO_DENOMINATOR;
    case Errc::signaling: return NSX_ERR_SIGNALING;
    case Errc::zero_probability: return NSX_ERR_ZERO_PROBABILITY;
    case Errc::shape_mismatch: return NSX_ERR_SHAPE_MISMATCH;
    case Errc::validation: return NSX_ERR_VALIDATION;
    case Errc::not_permutation: return NSX_ERR_NOT_PERMUTATION;
    case Errc::parse: return NSX_ERR_PARSE;
    case Errc::budget_exceeded: return NSX_ERR_BUDGET_EXCEEDED;
    case Errc::truncated: return NSX_ERR_TRUNCATED;
    case Errc::no_plan: return NSX_ERR_NO_PLAN;
  }
  return NSX_ERR_UNKNOWN;
}

void set_error(int code, const std::string& message) {
  g_last_code = code;
  g_last_message = message;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn inside the error boundary; returns fallback when it throws.
template <typename T, typename Fn>
T guarded(T fallback, Fn&& fn) {
  try {
    set_ok();
    return fn();
  } catch (const Error& e) {
    set_error(code_of(e.code()), e.what());
  } catch (const std::exception& e) {
    set_error(NSX_ERR_UNKNOWN, e.what());
  } catch (...) {
    set_error(NSX_ERR_UNKNOWN, "unknown error");
  }
  return fallback;
}

const nsx_box* require(const nsx_box* p) {
  if (p == nullptr) throw Error(Errc::invalid_argument, "null box handle");
  return p;
}

const nsx_wiring* require(const nsx_wiring* p) {
  if (p == nullptr) throw Error(Errc::invalid_argument, "null wiring handle");
  return p;
}

const nsx_plan* require(const nsx_plan* p) {
  if (p == nullptr) throw Error(Errc::invalid_argument, "null plan handle");
  return p;
}

const char* require(const char* p, const char* what) {
  if (p == nullptr) throw Error(Errc::invalid_argument, std::string("null ") + what);
  return p;
}

SchedulePattern pattern_of(const std::string& name) {
  if (name == "alt") return SchedulePattern::alternating;
  if (name == "alice-first") return SchedulePattern::alice_first;
  if (name == "bob-first") return SchedulePattern::bob_first;
  throw Error(Errc::invalid_argument,
              "unknown schedule '" + name + "' (want alt, alice-first, or bob-first)");
}

}  // namespace

extern "C" {

const char* nsx_version(void) { return "1.0.0"; }

int nsx_last_error_code(void) { return g_last_code; }

const char* nsx_last_error_message(void) { return g_last_message.c_str(); }

void nsx_string_free(char* str) { std::free(str); }

nsx_box* nsx_box_make_d(int d) {
  return guarded<nsx_box*>(nullptr, [&] { return new nsx_box{make_d_box(d)}; });
}

void nsx_box_free(nsx_box* box) { delete box; }

nsx_box* nsx_box_parse(const char* text, int strict) {
  return guarded<nsx_box*>(nullptr, [&] {
    return new nsx_box{parse_box(require(text, "text"), strict != 0)};
  });
}

char* nsx_box_write(const nsx_box* box) {
  return guarded<char*>(nullptr, [&] { return dup_string(write_box(require(box)->v)); });
}

int nsx_box_shape(const nsx_box* box, int* x_size, int* y_size, int* a_size, int* b_size) {
  return guarded<int>(-1, [&] {
    const NsBox& b = require(box)->v;
    if (x_size != nullptr) *x_size = b.x_size();
    if (y_size != nullptr) *y_size = b.y_size();
    if (a_size != nullptr) *a_size = b.a_size();
    if (b_size != nullptr) *b_size = b.b_size();
    return 0;
  });
}

int nsx_box_equal(const nsx_box* a, const nsx_box* b) {
  return guarded<int>(-1, [&] { return require(a)->v == require(b)->v ? 1 : 0; });
}

char* nsx_box_entry(const nsx_box* box, int x, int y, int a, int b) {
  return guarded<char*>(nullptr,
                        [&] { return dup_string(require(box)->v.at(x, y, a, b).str()); });
}

int nsx_box_check_no_signaling(const nsx_box* box, int machine, char** report) {
  return guarded<int>(-1, [&] {
    NsReport rep = check_no_signaling(require(box)->v);
    if (report != nullptr) {
      std::string text;
      for (const NsViolation& v : rep.violations) {
        if (machine != 0) {
          text += "violation " + std::string(party_name(v.signaling_party)) + " " +
                  std::to_string(v.input_a) + " " + std::to_string(v.input_b) + " " +
                  std::to_string(v.partner_input) + " " + std::to_string(v.partner_output) +
                  " " + v.sum_a.str() + " " + v.sum_b.str() + "\n";
        } else {
          text += v.describe() + "\n";
        }
      }
      *report = dup_string(text);
    }
    return rep.pass ? 1 : 0;
  });
}

int nsx_verify_box_document(const char* text, int machine, char** report) {
  return guarded<int>(-1, [&] {
    VerifyReport rep = verify_box_document(require(text, "text"));
    if (report != nullptr) *report = dup_string(render_verify(rep, machine != 0));
    return rep.pass() ? 1 : 0;
  });
}

char* nsx_box_total_variation(const nsx_box* a, const nsx_box* b) {
  return guarded<char*>(nullptr, [&] {
    return dup_string(total_variation(require(a)->v, require(b)->v).str());
  });
}

char* nsx_box_game_win_probability(const nsx_box* box) {
  return guarded<char*>(nullptr,
                        [&] { return dup_string(game_win_probability(require(box)->v).str()); });
}

nsx_box* nsx_box_protocol2(const nsx_box* box, int d1) {
  return guarded<nsx_box*>(nullptr,
                           [&] { return new nsx_box{protocol2_box(require(box)->v, d1)}; });
}

nsx_box* nsx_protocol3_box(int d1, int n, int d2, char** tv_error) {
  return guarded<nsx_box*>(nullptr, [&] {
    Protocol3Result r = protocol3_box(d1, n, d2);
    if (tv_error != nullptr) *tv_error = dup_string(r.tv_error.str());
    return new nsx_box{std::move(r.box)};
  });
}

nsx_wiring* nsx_wiring_protocol1(const nsx_box* box1, const nsx_box* box2) {
  return guarded<nsx_wiring*>(nullptr, [&] {
    return new nsx_wiring{protocol1_wiring(require(box1)->v, require(box2)->v)};
  });
}

nsx_wiring* nsx_wiring_round(const char* protocol, int d, int s) {
  return guarded<nsx_wiring*>(nullptr, [&] {
    return new nsx_wiring{round_wiring_by_name(require(protocol, "protocol"), d, s)};
  });
}

nsx_wiring* nsx_wiring_parse(const char* text, int strict) {
  return guarded<nsx_wiring*>(nullptr, [&] {
    return new nsx_wiring{parse_wiring(require(text, "text"), strict != 0)};
  });
}

char* nsx_wiring_write(const nsx_wiring* w) {
  return guarded<char*>(nullptr, [&] { return dup_string(write_wiring(require(w)->v)); });
}

void nsx_wiring_free(nsx_wiring* w) { delete w; }

int nsx_wiring_equal(const nsx_wiring* a, const nsx_wiring* b) {
  return guarded<int>(-1, [&] { return require(a)->v == require(b)->v ? 1 : 0; });
}

nsx_box* nsx_wiring_effective_box(const nsx_wiring* w) {
  return guarded<nsx_box*>(nullptr, [&] { return new nsx_box{effective_box(require(w)->v)}; });
}

char* nsx_wiring_round_table(const nsx_wiring* w, int x, int y, int machine) {
  return guarded<char*>(nullptr, [&] {
    RoundTable rt = evaluate_exact(require(w)->v);
    return dup_string(render_round_table(rt, x, y, machine != 0));
  });
}

char* nsx_wiring_cycles(const nsx_wiring* w, int machine) {
  return guarded<char*>(nullptr,
                        [&] { return dup_string(render_cycles_report(require(w)->v, machine != 0)); });
}

nsx_box* nsx_wiring_condition(const nsx_wiring* w, char** success) {
  return guarded<nsx_box*>(nullptr, [&] {
    ConditionedRound round = condition_on_success(require(w)->v);
    if (success != nullptr) *success = dup_string(round.success.str());
    return new nsx_box{std::move(round.box)};
  });
}

nsx_plan* nsx_plan_make(int d_from, int d_to) {
  return guarded<nsx_plan*>(nullptr, [&] { return new nsx_plan{plan_conversion(d_from, d_to)}; });
}

void nsx_plan_free(nsx_plan* plan) { delete plan; }

char* nsx_plan_render(const nsx_plan* plan, int machine) {
  return guarded<char*>(nullptr,
                        [&] { return dup_string(render_plan(require(plan)->v, machine != 0)); });
}

char* nsx_plan_consumption(const nsx_plan* plan) {
  return guarded<char*>(nullptr,
                        [&] { return dup_string(require(plan)->v.expected_consumption.str()); });
}

int nsx_plan_execute(const nsx_plan* plan) {
  return guarded<int>(-1, [&] {
    PlanExecution run = execute_plan(require(plan)->v);
    return run.exact ? 1 : 0;
  });
}

char* nsx_simulate(const char* protocol, int d, int s, int x, int y, long long trials,
                   uint64_t seed, const char* schedule, int machine) {
  return guarded<char*>(nullptr, [&] {
    if (trials <= 0) throw Error(Errc::invalid_argument, "trials must be positive");
    Wiring w = round_wiring_by_name(require(protocol, "protocol"), d, s);
    SchedulePattern pattern = pattern_of(require(schedule, "schedule"));
    RusSimulation sim = simulate_rus(w, x, y, trials, seed, pattern, 1'000'000);
    return dup_string(render_simulation(sim, machine != 0));
  });
}

}  // extern "C"
