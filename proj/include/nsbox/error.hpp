// Error types shared by every module. All failures surface as nsbox::Error
// (or a subclass) carrying a machine-readable code and a human message.
#pragma once

#include <stdexcept>
#include <string>

namespace nsbox {

enum class Errc {
  invalid_argument = 1,  // bad sizes, out-of-range indices, bad parameters
  zero_denominator,
  signaling,             // a box violates the no-signaling condition
  zero_probability,      // conditioning on an impossible partner outcome
  shape_mismatch,        // incompatible alphabets between two boxes
  validation,            // wiring/schedule structure is inconsistent
  not_permutation,       // a block is not a scaled permutation matrix
  parse,                 // document syntax or semantic error
  budget_exceeded,       // search larger than the configured budget
  truncated,             // repeat-until-success hit the round cap
  no_plan,               // conversion planner found no chain
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Document parse failure. `line` is 1-based within the parsed text.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error(Errc::parse, "line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace nsbox
