#pragma once

#include <string>

#include "hopfsmooth/polynomial.hpp"

namespace hopfsmooth {

/// Element of k(t_1..t_m), the fraction field of a polynomial ring. Kept in
/// lowest terms with a denominator whose leading coefficient is 1.
class RationalFunction {
 public:
  explicit RationalFunction(const RingPtr& ring);
  explicit RationalFunction(Polynomial numerator);
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  const RingPtr& ring() const noexcept { return num_.ring(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction inverse() const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

}  // namespace hopfsmooth
