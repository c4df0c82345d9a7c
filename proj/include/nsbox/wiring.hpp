// Adaptive wirings: several component boxes queried by each party in its own
// causal order, later inputs computed from earlier outputs. Both parties'
// orders may disagree (crossed order); evaluation enumerates output tuples
// exactly.
#pragma once

#include <vector>

#include "nsbox/box.hpp"

namespace nsbox {

// Mixed-radix helpers for output tuples, digit 0 most significant.
int radix_total(const std::vector<int>& sizes);
void radix_decode(int idx, const std::vector<int>& sizes, std::vector<int>& digits);
int radix_encode(const std::vector<int>& digits, const std::vector<int>& sizes);

// Input rule for one stage of one party. `reads` lists earlier stage indices
// (positions in that party's order, strictly below this stage) whose outputs
// the rule consumes. `table` is a mixed-radix lookup over (external input,
// read outputs in listed order), external input most significant; the value
// is the input fed to this stage's box.
struct InputMap {
  std::vector<int> reads;
  std::vector<int> table;
  friend bool operator==(const InputMap&, const InputMap&) = default;
};

// Final output rule for one party: mixed-radix lookup over (external input,
// all box outputs in box-index order).
struct OutputMap {
  int out_size = 0;
  std::vector<int> table;
  friend bool operator==(const OutputMap&, const OutputMap&) = default;
};

struct Wiring {
  int x_size = 0, y_size = 0;
  std::vector<NsBox> boxes;
  std::vector<int> alice_order, bob_order;        // permutations of box indices
  std::vector<InputMap> alice_inputs, bob_inputs;  // one per stage
  OutputMap alice_output, bob_output;
  friend bool operator==(const Wiring&, const Wiring&) = default;
};

// Joint distribution of all box outputs for one external input pair.
// Tuples are indexed in box-index order (not stage order).
struct RoundBlock {
  std::vector<int> a_sizes, b_sizes;
  std::vector<Rational> p;  // a_tuple * b_total + b_tuple
  int a_total() const { return radix_total(a_sizes); }
  int b_total() const { return radix_total(b_sizes); }
  const Rational& at(int a_idx, int b_idx) const { return p[size_t(a_idx) * b_total() + b_idx]; }
};

struct RoundTable {
  int x_size = 0, y_size = 0;
  std::vector<RoundBlock> blocks;
  const RoundBlock& block(int x, int y) const { return blocks[size_t(x) * y_size + y]; }
};

// Structural consistency: orders are permutations, reads point at earlier
// stages, tables have the right sizes and in-range values. Throws
// Errc::validation with a specific message on the first problem found.
void validate_wiring(const Wiring& w);

// Exact joint output distribution per external input pair. Refuses wirings
// whose component boxes signal (Errc::signaling): for those the joint
// distribution would depend on the interleaving of the two parties.
RoundTable evaluate_exact(const Wiring& w);

// Pushes the round table through both output maps; the result is an NsBox
// (block normalization holds by construction, checked again on build).
NsBox effective_box(const Wiring& w);

}  // namespace nsbox
