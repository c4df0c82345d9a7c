// Structure analysis: permutation blocks, cycle decompositions, canonical
// cycle labelings, relabeling witnesses, box equivalence.
#pragma once

#include <optional>
#include <vector>

#include "nsbox/wiring.hpp"

namespace nsbox {

struct OutputPermutation {
  std::vector<int> image;  // image[a] = b
  int size() const { return int(image.size()); }
  bool is_identity() const;
};

// Reads one round-table block as a scaled permutation matrix: square, exactly
// one nonzero entry per row and per column, all nonzero entries equal.
// Throws Errc::not_permutation naming the offending row or column.
OutputPermutation extract_permutation(const RoundBlock& blk);

// Orbits of the permutation, each listed from its smallest element, ordered
// by that element.
std::vector<std::vector<int>> cycles(const OutputPermutation& p);

// Cycle lengths sorted ascending.
std::vector<int> cycle_structure(const OutputPermutation& p);

// Consecutive labels 0..L-1 along each non-trivial cycle; elements of
// trivial (length-1) cycles get -1. Requires all non-trivial cycles to share
// one length L. Each cycle starts at its lexicographically smallest element
// whose leading tuple digit is 0 (tuples decoded by `pair_width`: leading
// digit = idx / pair_width); a cycle with no such element starts at its
// smallest element.
std::vector<int> derive_cycle_labeling(const OutputPermutation& p, int pair_width);

// Witness that `candidate` equals `target` after relabeling each party's
// outputs by one bijection (input structure untouched).
struct OutputRelabeling {
  std::vector<int> alice;  // candidate output -> target output
  std::vector<int> bob;
};

// Searches for output bijections g_A, g_B with
// candidate(a,b|x,y) == target(g_A(a), g_B(b)|x,y) for all entries.
// Enumerates g_A and propagates g_B by column matching; `budget` caps the
// number of g_A candidates (A! must not exceed it, Errc::budget_exceeded).
// Returns the lexicographically first witness, or nullopt.
std::optional<OutputRelabeling> derive_relabeling(const NsBox& candidate, const NsBox& target,
                                                  long long budget = 5'000'000);

// Witness that two boxes are the same resource up to: swapping the parties,
// permuting each party's inputs, relabeling each party's outputs per input,
// and deleting inputs whose marginal is deterministic.
struct BoxEquivalence {
  bool party_swap = false;
  std::vector<int> alice_kept_inputs_1, bob_kept_inputs_1;  // surviving inputs of box 1
  std::vector<int> alice_kept_inputs_2, bob_kept_inputs_2;  // surviving inputs of box 2
  std::vector<int> alice_input_perm;  // reduced box1 input -> reduced box2 input
  std::vector<int> bob_input_perm;
  std::vector<std::vector<int>> alice_output_maps;  // per reduced box1 input
  std::vector<std::vector<int>> bob_output_maps;
};

std::optional<BoxEquivalence> boxes_equivalent(const NsBox& box1, const NsBox& box2,
                                               long long budget = 5'000'000);

// Largest over (x,y) is taken after the per-block 1/2 * L1 distance.
Rational total_variation(const NsBox& box1, const NsBox& box2);

// min over (x,y) of the mass on {(a,b): (b-a) mod d == (x*y) mod d}.
// Requires binary inputs and equal output alphabets.
Rational game_win_probability(const NsBox& box);

}  // namespace nsbox
