#pragma once
// Action values for filtered complexes. The primary representation is an
// exact rational multiple of pi; a real-valued escape hatch exists for
// actions that are not rational in pi (Morse function values, user input).
// The two infinities are valid window bounds but reject arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace symhom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

class ActionValue {
 public:
  enum class Kind { NegInf, PiRational, Real, PosInf };

  // default: exact zero
  ActionValue() : kind_(Kind::PiRational), coeff_(0), real_(0.0) {}

  static ActionValue pi_rational(const Rational& q) {
    ActionValue a;
    a.kind_ = Kind::PiRational;
    a.coeff_ = q;
    return a;
  }
  static ActionValue real(double v) {
    ActionValue a;
    a.kind_ = Kind::Real;
    a.real_ = v;
    return a;
  }
  static ActionValue neg_inf() {
    ActionValue a;
    a.kind_ = Kind::NegInf;
    return a;
  }
  static ActionValue pos_inf() {
    ActionValue a;
    a.kind_ = Kind::PosInf;
    return a;
  }
  static ActionValue zero() { return ActionValue(); }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::PiRational; }
  bool is_finite() const {
    return kind_ == Kind::PiRational || kind_ == Kind::Real;
  }

  // multiple of pi; valid only for exact values
  const Rational& coeff() const {
    if (kind_ != Kind::PiRational)
      throw std::domain_error("ActionValue::coeff on non-exact value");
    return coeff_;
  }

  double to_double() const;

  // Total order. Exact/exact comparisons are exact; any comparison touching
  // a Real value goes through double arithmetic.
  int compare(const ActionValue& o) const;

  bool operator==(const ActionValue& o) const { return compare(o) == 0; }
  bool operator!=(const ActionValue& o) const { return compare(o) != 0; }
  bool operator<(const ActionValue& o) const { return compare(o) < 0; }
  bool operator<=(const ActionValue& o) const { return compare(o) <= 0; }
  bool operator>(const ActionValue& o) const { return compare(o) > 0; }
  bool operator>=(const ActionValue& o) const { return compare(o) >= 0; }

  // finite operands only
  ActionValue operator+(const ActionValue& o) const;
  ActionValue operator-(const ActionValue& o) const;
  // k * value, finite only
  ActionValue scaled(long long k) const;

  // "3/2*pi", "-2*pi", "0", "1.25", "inf", "-inf"
  std::string str() const;

 private:
  Kind kind_;
  Rational coeff_;
  double real_;
};

}  // namespace symhom
