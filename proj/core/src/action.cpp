#include "symhom/action.hpp"

#include <cstdio>

namespace symhom {

double ActionValue::to_double() const {
  switch (kind_) {
    case Kind::PiRational:
      return coeff_.convert_to<double>() * kPi;
    case Kind::Real:
      return real_;
    case Kind::NegInf:
      return -std::numeric_limits<double>::infinity();
    case Kind::PosInf:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

int ActionValue::compare(const ActionValue& o) const {
  if (kind_ == Kind::NegInf) return o.kind_ == Kind::NegInf ? 0 : -1;
  if (o.kind_ == Kind::NegInf) return 1;
  if (kind_ == Kind::PosInf) return o.kind_ == Kind::PosInf ? 0 : 1;
  if (o.kind_ == Kind::PosInf) return -1;
  if (kind_ == Kind::PiRational && o.kind_ == Kind::PiRational) {
    if (coeff_ < o.coeff_) return -1;
    if (coeff_ > o.coeff_) return 1;
    return 0;
  }
  double a = to_double(), b = o.to_double();
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

ActionValue ActionValue::operator+(const ActionValue& o) const {
  if (!is_finite() || !o.is_finite())
    throw std::domain_error("arithmetic on infinite action value");
  if (kind_ == Kind::PiRational && o.kind_ == Kind::PiRational)
    return pi_rational(coeff_ + o.coeff_);
  return real(to_double() + o.to_double());
}

ActionValue ActionValue::operator-(const ActionValue& o) const {
  if (!is_finite() || !o.is_finite())
    throw std::domain_error("arithmetic on infinite action value");
  if (kind_ == Kind::PiRational && o.kind_ == Kind::PiRational)
    return pi_rational(coeff_ - o.coeff_);
  return real(to_double() - o.to_double());
}

ActionValue ActionValue::scaled(long long k) const {
  if (!is_finite())
    throw std::domain_error("arithmetic on infinite action value");
  if (kind_ == Kind::PiRational) return pi_rational(coeff_ * k);
  return real(real_ * static_cast<double>(k));
}

std::string ActionValue::str() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "inf";
    case Kind::PiRational: {
      if (coeff_ == 0) return "0";
      BigInt num = numerator(coeff_), den = denominator(coeff_);
      std::string s = num.str();
      if (den != 1) s += "/" + den.str();
      return s + "*pi";
    }
    case Kind::Real: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", real_);
      return buf;
    }
  }
  return "";
}

}  // namespace symhom
