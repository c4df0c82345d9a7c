// Two-party conditional probability tables p(a,b|x,y) with exact entries.
#pragma once

#include <string>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox {

enum class Party { alice, bob };

inline const char* party_name(Party p) { return p == Party::alice ? "alice" : "bob"; }

// Dense table over x in [0,X), y in [0,Y), a in [0,A), b in [0,B).
// Invariant, enforced at construction: every entry is in [0,1] and every
// (x,y) block sums to exactly 1.
class NsBox {
 public:
  NsBox(int x_size, int y_size, int a_size, int b_size, std::vector<Rational> entries);

  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  int a_size() const { return a_size_; }
  int b_size() const { return b_size_; }

  const Rational& at(int x, int y, int a, int b) const {
    if (x < 0 || x >= x_size_ || y < 0 || y >= y_size_ || a < 0 || a >= a_size_ || b < 0 ||
        b >= b_size_) {
      throw Error(Errc::invalid_argument, "box index out of range");
    }
    return p_[index(x, y, a, b)];
  }

  friend bool operator==(const NsBox& l, const NsBox& r) = default;

 private:
  int index(int x, int y, int a, int b) const {
    return ((x * y_size_ + y) * a_size_ + a) * b_size_ + b;
  }

  int x_size_, y_size_, a_size_, b_size_;
  std::vector<Rational> p_;
};

// Convenience builder: collects entries via set(), validates once.
class BoxBuilder {
 public:
  BoxBuilder(int x_size, int y_size, int a_size, int b_size);
  void set(int x, int y, int a, int b, const Rational& v);
  void add(int x, int y, int a, int b, const Rational& v);
  NsBox build() &&;

 private:
  int x_size_, y_size_, a_size_, b_size_;
  std::vector<Rational> p_;
};

// The d-box: binary inputs, outputs in [0,d), p(a,b|x,y) = 1/d exactly when
// (b - a) mod d == (x*y) mod d, else 0. d = 1 gives the deterministic box.
NsBox make_d_box(int d);

struct NsViolation {
  Party signaling_party;      // whose input moves the partner's marginal
  int input_a, input_b;       // the two settings of that input that disagree
  int partner_input;
  int partner_output;
  Rational sum_a, sum_b;      // marginal sums under input_a and input_b
  std::string describe() const;
};

struct NsReport {
  bool pass = true;
  std::vector<NsViolation> violations;
};

// Checks, for each party, that the partner's output marginal is independent
// of that party's input. Collects every violating tuple.
NsReport check_no_signaling(const NsBox& box);

// Output distribution of `party` under its own input, which no-signaling
// makes independent of the partner's input. Throws Errc::signaling if the
// box disagrees across partner inputs.
std::vector<Rational> marginal(const NsBox& box, Party party, int own_input);

// Distribution of `party`'s output given both inputs and the partner's
// output. Throws Errc::zero_probability when the partner outcome has
// probability zero under those inputs.
std::vector<Rational> conditional_on_partner(const NsBox& box, Party party, int own_input,
                                             int partner_input, int partner_output);

}  // namespace nsbox
