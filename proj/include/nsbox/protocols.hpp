// Interconversion constructions between d-boxes of different sizes:
//   p1        composes a d1-box and a d2-box into an exact (d1*d2)-box
//   p2        reduces a (d1*d2)-box to an exact d1-box (outputs mod d1)
//   p3        approximates a d2-box by n d1-boxes (exact iff d2 | d1^n)
//   p4        crossed two-box round that, conditioned on success, yields an
//             exact (d+1)-box from two d-boxes
//   variants  same crossed round with other zero-input rules, reaching
//             (d+s)-boxes and (d^2-2)-boxes
#pragma once

#include "nsbox/wiring.hpp"

namespace nsbox {

Wiring protocol1_wiring(const NsBox& box1, const NsBox& box2);

NsBox protocol2_box(const NsBox& box, int d1);

struct Protocol3Result {
  NsBox box;          // binary inputs, outputs in [0, d2)
  Rational tv_error;  // total variation distance from make_d_box(d2)
};
Protocol3Result protocol3_box(int d1, int n, int d2);

// One crossed round: two d-boxes, Alice queries box 0 then box 1, Bob
// queries box 1 then box 0; each party feeds 0 to its second box when its
// first output is below the party's threshold, its external input otherwise.
// Output maps leave the raw output pairs.
Wiring protocol4_round_wiring(int d);             // both thresholds 1
Wiring variant_threshold_wiring(int d, int s);    // both thresholds s
Wiring variant_two_zero_wiring(int d);            // Alice threshold 1, Bob 2

// Alice's published output rule for the p4 round: o1 if o1 <= o2, else o1+1.
int protocol4_output_value(int o1, int o2, int d);

// Round wirings keyed by their command-line names: "p4", "two-zero",
// "threshold" (threshold consumes s, the others ignore it).
Wiring round_wiring_by_name(const std::string& name, int d, int s);

// A coincident failure outcome: Alice's raw tuple and Bob's raw tuple.
struct FailurePair {
  std::vector<int> alice, bob;
};

struct ConditionedRound {
  NsBox box;                  // conditioned box with relabeled outputs
  NsBox raw_box;              // conditioned box on the compact surviving-tuple alphabet
  Rational success;           // per-round success probability
  std::vector<int> labels;    // tuple index -> final label, -1 on failure (same map
                              // for both parties; identity blocks force that)
  std::vector<int> surviving; // surviving tuple indices, ascending
  int boxes_per_round = 0;
};

// Conditions the round table on "no party saw a failure outcome". Verifies
// the parties' local failure flags coincide with probability 1 in every
// block and that the failure mass is block-independent; relabels surviving
// tuples consecutively along the cycles of the (1,1) block.
ConditionedRound condition_on_success(const Wiring& w, const std::vector<FailurePair>& failures);

// Same, with the failure set taken from the fixed points of the (1,1) block.
ConditionedRound condition_on_success(const Wiring& w);

// Expected d-boxes consumed per (d+1)-box by the p4 round repeated until
// success: 2 boxes per round, success (d^2-1)/d^2, so 2d^2/(d^2-1).
Rational expected_boxes_step_up(int d);

enum class StepKind { p1, p2, p4, threshold, two_zero };

const char* step_kind_name(StepKind k);

struct ConversionStep {
  StepKind kind;
  int in_size = 0, out_size = 0;
  int s = 0;                // threshold parameter, 0 for other kinds
  int boxes_per_round = 0;  // 1 for p2, otherwise 2
  Rational success;         // per-round success probability, 1 for exact steps
  friend bool operator==(const ConversionStep&, const ConversionStep&) = default;
};

struct ConversionPlan {
  int from = 0, to = 0;
  std::vector<ConversionStep> steps;
  Rational expected_consumption;  // expected source boxes per target box
};

// Shortest chain of steps from d_from-boxes to d_to-boxes (breadth-first
// over sizes; ties broken by a fixed edge order: p2 by ascending divisor,
// p4, threshold by ascending s, two-zero, p1). Throws Errc::no_plan when no
// chain exists.
ConversionPlan plan_conversion(int d_from, int d_to);

struct PlanExecution {
  NsBox box;
  bool exact;  // box == make_d_box(plan.to), with every intermediate exact too
};

// Runs the plan on exact tables, verifying after each step that the current
// box equals the step's target d-box.
PlanExecution execute_plan(const ConversionPlan& plan);

}  // namespace nsbox
