// Small box transforms used by the equivalence search and its tests.
#pragma once

#include "nsbox/box.hpp"

namespace nsbox {

// Swaps the two parties: inputs x<->y, outputs a<->b.
NsBox transpose_parties(const NsBox& box);

struct ReducedBox {
  NsBox box;
  std::vector<int> kept_x, kept_y;  // surviving original input indices, ascending
};

// Drops every input whose own-output marginal is a point mass (such an input
// carries no correlation). If all of a party's inputs are deterministic,
// input 0 is kept so the box stays well-formed.
ReducedBox delete_deterministic_inputs(const NsBox& box);

}  // namespace nsbox
