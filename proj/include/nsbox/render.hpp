// Text reports. Every renderer has a human layout and a machine layout;
// machine lines are space-separated fields with rationals as num/den.
#pragma once

#include <string>

#include "nsbox/protocols.hpp"
#include "nsbox/serdes.hpp"
#include "nsbox/simulate.hpp"

namespace nsbox {

// One block per (x,y) unless a single pair is requested (x, y >= 0): rows
// are Alice tuples, columns Bob tuples. Machine mode prints one line per
// nonzero entry: "p <x> <y> <a-tuple> <b-tuple> <num>/<den>", tuples
// comma-joined.
std::string render_round_table(const RoundTable& rt, int x, int y, bool machine);

// Cycle decomposition of the (1,1) block: the length multiset, then the
// element -> image arrows grouped by cycle. Machine mode prints
// "lengths: 1,3" then "arrow <a-tuple> <b-tuple>" lines.
std::string render_cycles_report(const Wiring& w, bool machine);

std::string render_verify(const VerifyReport& rep, bool machine);

std::string render_plan(const ConversionPlan& plan, bool machine);

struct RusSimulation {
  ConditionedRound step;
  EmpiricalReport empirical;      // conditioned outputs vs step.box at (x,y)
  double mean_boxes = 0.0;
  double mean_boxes_std_error = 0.0;
  long long trials = 0;
  int x = 1, y = 1;
};

// Runs `trials` repeat-until-success trials (stream = trial index) and
// compares the conditioned outcomes with the exact conditioned box.
RusSimulation simulate_rus(const Wiring& w, int x, int y, long long trials, uint64_t master_seed,
                           SchedulePattern pattern, int max_rounds = 1'000'000);

std::string render_simulation(const RusSimulation& sim, bool machine);

}  // namespace nsbox
