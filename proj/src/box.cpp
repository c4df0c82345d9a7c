#include "nsbox/box.hpp"

#include <sstream>

namespace nsbox {

namespace {

void check_sizes(int x_size, int y_size, int a_size, int b_size) {
  if (x_size < 1 || y_size < 1 || a_size < 1 || b_size < 1) {
    std::ostringstream os;
    os << "box sizes must be positive, got " << x_size << " " << y_size << " " << a_size << " "
       << b_size;
    throw Error(Errc::invalid_argument, os.str());
  }
}

}  // namespace

NsBox::NsBox(int x_size, int y_size, int a_size, int b_size, std::vector<Rational> entries)
    : x_size_(x_size), y_size_(y_size), a_size_(a_size), b_size_(b_size), p_(std::move(entries)) {
  check_sizes(x_size, y_size, a_size, b_size);
  const size_t want = size_t(x_size) * y_size * a_size * b_size;
  if (p_.size() != want) {
    throw Error(Errc::invalid_argument, "box entry count " + std::to_string(p_.size()) +
                                            " does not match sizes (want " + std::to_string(want) +
                                            ")");
  }
  for (int x = 0; x < x_size_; ++x) {
    for (int y = 0; y < y_size_; ++y) {
      Rational sum = 0;
      for (int a = 0; a < a_size_; ++a) {
        for (int b = 0; b < b_size_; ++b) {
          const Rational& v = p_[index(x, y, a, b)];
          if (v < 0 || v > 1) {
            std::ostringstream os;
            os << "entry p(" << a << "," << b << "|" << x << "," << y << ") = " << v
               << " outside [0,1]";
            throw Error(Errc::invalid_argument, os.str());
          }
          sum += v;
        }
      }
      if (sum != 1) {
        std::ostringstream os;
        os << "block (x=" << x << ",y=" << y << ") sums to " << sum << ", not 1";
        throw Error(Errc::invalid_argument, os.str());
      }
    }
  }
}

BoxBuilder::BoxBuilder(int x_size, int y_size, int a_size, int b_size)
    : x_size_(x_size), y_size_(y_size), a_size_(a_size), b_size_(b_size) {
  check_sizes(x_size, y_size, a_size, b_size);
  p_.assign(size_t(x_size) * y_size * a_size * b_size, Rational(0));
}

void BoxBuilder::set(int x, int y, int a, int b, const Rational& v) {
  p_[((size_t(x) * y_size_ + y) * a_size_ + a) * b_size_ + b] = v;
}

void BoxBuilder::add(int x, int y, int a, int b, const Rational& v) {
  p_[((size_t(x) * y_size_ + y) * a_size_ + a) * b_size_ + b] += v;
}

NsBox BoxBuilder::build() && {
  return NsBox(x_size_, y_size_, a_size_, b_size_, std::move(p_));
}

NsBox make_d_box(int d) {
  if (d < 1) throw Error(Errc::invalid_argument, "d-box needs d >= 1, got " + std::to_string(d));
  BoxBuilder bld(2, 2, d, d);
  const Rational w(1, d);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < d; ++a) {
        int b = (a + x * y) % d;
        bld.set(x, y, a, b, w);
      }
  return std::move(bld).build();
}

std::string NsViolation::describe() const {
  std::ostringstream os;
  const char* partner = signaling_party == Party::alice ? "bob" : "alice";
  os << party_name(signaling_party) << "'s input signals to " << partner << ": sum over "
     << party_name(signaling_party) << " outputs at (" << partner << " input "
     << partner_input << ", output " << partner_output << ") is " << sum_a << " under input "
     << input_a << " but " << sum_b << " under input " << input_b;
  return os.str();
}

NsReport check_no_signaling(const NsBox& box) {
  NsReport rep;
  // Alice's input must not move Bob's marginal.
  for (int y = 0; y < box.y_size(); ++y) {
    for (int b = 0; b < box.b_size(); ++b) {
      Rational ref = 0;
      for (int a = 0; a < box.a_size(); ++a) ref += box.at(0, y, a, b);
      for (int x = 1; x < box.x_size(); ++x) {
        Rational sum = 0;
        for (int a = 0; a < box.a_size(); ++a) sum += box.at(x, y, a, b);
        if (sum != ref) {
          rep.pass = false;
          rep.violations.push_back({Party::alice, 0, x, y, b, ref, sum});
        }
      }
    }
  }
  // Bob's input must not move Alice's marginal.
  for (int x = 0; x < box.x_size(); ++x) {
    for (int a = 0; a < box.a_size(); ++a) {
      Rational ref = 0;
      for (int b = 0; b < box.b_size(); ++b) ref += box.at(x, 0, a, b);
      for (int y = 1; y < box.y_size(); ++y) {
        Rational sum = 0;
        for (int b = 0; b < box.b_size(); ++b) sum += box.at(x, y, a, b);
        if (sum != ref) {
          rep.pass = false;
          rep.violations.push_back({Party::bob, 0, y, x, a, ref, sum});
        }
      }
    }
  }
  return rep;
}

std::vector<Rational> marginal(const NsBox& box, Party party, int own_input) {
  const bool alice = party == Party::alice;
  const int own_inputs = alice ? box.x_size() : box.y_size();
  const int own_outputs = alice ? box.a_size() : box.b_size();
  const int partner_inputs = alice ? box.y_size() : box.x_size();
  const int partner_outputs = alice ? box.b_size() : box.a_size();
  if (own_input < 0 || own_input >= own_inputs) {
    throw Error(Errc::invalid_argument,
                std::string(party_name(party)) + " input " + std::to_string(own_input) +
                    " out of range");
  }
  auto sum_out = [&](int partner_input, int own_output) {
    Rational s = 0;
    for (int po = 0; po < partner_outputs; ++po) {
      s += alice ? box.at(own_input, partner_input, own_output, po)
                 : box.at(partner_input, own_input, po, own_output);
    }
    return s;
  };
  std::vector<Rational> dist(own_outputs);
  for (int o = 0; o < own_outputs; ++o) dist[o] = sum_out(0, o);
  for (int pi = 1; pi < partner_inputs; ++pi) {
    for (int o = 0; o < own_outputs; ++o) {
      if (sum_out(pi, o) != dist[o]) {
        std::ostringstream os;
        os << "marginal of " << party_name(party) << " at input " << own_input
           << " output " << o << " depends on partner input (" << dist[o] << " at 0, "
           << sum_out(pi, o) << " at " << pi << ")";
        throw Error(Errc::signaling, os.str());
      }
    }
  }
  return dist;
}

std::vector<Rational> conditional_on_partner(const NsBox& box, Party party, int own_input,
                                             int partner_input, int partner_output) {
  const bool alice = party == Party::alice;
  const int own_inputs = alice ? box.x_size() : box.y_size();
  const int own_outputs = alice ? box.a_size() : box.b_size();
  const int partner_inputs = alice ? box.y_size() : box.x_size();
  const int partner_outputs = alice ? box.b_size() : box.a_size();
  if (own_input < 0 || own_input >= own_inputs || partner_input < 0 ||
      partner_input >= partner_inputs || partner_output < 0 || partner_output >= partner_outputs) {
    throw Error(Errc::invalid_argument, "conditional_on_partner: index out of range");
  }
  auto joint = [&](int o) {
    return alice ? box.at(own_input, partner_input, o, partner_output)
                 : box.at(partner_input, own_input, partner_output, o);
  };
  Rational denom = 0;
  for (int o = 0; o < own_outputs; ++o) denom += joint(o);
  if (denom.is_zero()) {
    std::ostringstream os;
    os << "conditioning " << party_name(party) << " on partner outcome (input " << partner_input
       << ", output " << partner_output << ") which has probability zero";
    throw Error(Errc::zero_probability, os.str());
  }
  std::vector<Rational> dist(own_outputs);
  for (int o = 0; o < own_outputs; ++o) dist[o] = joint(o) / denom;
  return dist;
}

}  // namespace nsbox
