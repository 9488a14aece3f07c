#include "hopfsmooth/fraction.hpp"

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/gcd.hpp"

namespace hopfsmooth {

RationalFunction::RationalFunction(const RingPtr& ring)
    : num_(ring), den_(Polynomial::constant(ring, 1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.ring(), 1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw InvariantViolation("DivisionByZero", "rational function with zero denominator");
  reduce();
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.ring(), 1);
    return;
  }
  Polynomial g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  Coeff lc = den_.leading_coeff();
  if (lc != 1) {
    Coeff inv = den_.field().inv(lc);
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inverse(); }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw InvariantViolation("DivisionByZero", "inverse of zero rational function");
  return RationalFunction(den_, num_);
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace hopfsmooth
