// Exact rational scalar used for every probability in the library.
// Backed by boost::multiprecision::cpp_rational, which keeps values
// canonical: lowest terms, denominator > 0.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <string>

#include "nsbox/error.hpp"

namespace nsbox {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(Errc::zero_denominator, "rational with zero denominator");
    // cpp_rational's component constructor wants a positive denominator
    if (den < 0) {
      v_ = boost::multiprecision::cpp_rational(-num, -den);
    } else {
      v_ = boost::multiprecision::cpp_rational(num, den);
    }
  }
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw Error(Errc::zero_denominator, "division by zero rational");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { Rational r; r.v_ = boost::multiprecision::abs(v_); return r; }

  // Always "num/den" with den > 0, e.g. "1/4", "2/1", "0/1", "-3/5".
  std::string str() const { return num().str() + "/" + den().str(); }

  double to_double() const { return v_.convert_to<double>(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  boost::multiprecision::cpp_rational v_;
};

inline Rational rat(long long num, long long den) { return Rational(num, den); }

}  // namespace nsbox
