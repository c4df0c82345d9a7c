// Text formats.
//
// Box documents (.nsbox):
//   nsbox 1
//   sizes <X> <Y> <A> <B>
//   p <x> <y> <a> <b> <num>/<den>     one line per nonzero entry
// Entries are sorted by (x,y,a,b), zeros are omitted, rationals are in
// lowest terms with positive denominator. Strict parsing enforces all of
// that; lenient parsing accepts unsorted entries, non-canonical rationals,
// and explicit zero entries. Both reject duplicates, out-of-range indices,
// values outside [0,1], and blocks that do not sum to 1.
//
// Wiring documents (.nswire):
//   nswire 1
//   external <X> <Y>
//   final <A> <B>
//   boxes <n>
//   box <i> inline / <box document lines> / endbox     for each i
//   order alice <stage box indices>     then order bob
//   inmap alice <stage> reads <stage indices> ; <table values>   per stage,
//   then inmap bob lines
//   outmap alice <table values>     then outmap bob
// Boxes are always written inline; writing is deterministic byte for byte.
#pragma once

#include <string>

#include "nsbox/wiring.hpp"

namespace nsbox {

std::string write_box(const NsBox& box);
NsBox parse_box(const std::string& text, bool strict = true);

std::string write_wiring(const Wiring& w);
Wiring parse_wiring(const std::string& text, bool strict = true);

// Check pipeline for untrusted box documents: syntax errors throw
// ParseError; normalization and no-signaling failures are reported, not
// thrown.
struct VerifyReport {
  bool normalization = true;
  std::vector<std::string> normalization_problems;
  NsReport ns;  // meaningful only when normalization holds
  bool pass() const { return normalization && ns.pass; }
};

VerifyReport verify_box_document(const std::string& text);

}  // namespace nsbox
