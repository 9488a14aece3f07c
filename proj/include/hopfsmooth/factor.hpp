#pragma once

#include <vector>

#include "hopfsmooth/polynomial.hpp"

namespace hopfsmooth {

struct Factor {
  Polynomial factor;
  unsigned multiplicity = 0;
};

/// Factors g as a polynomial in `var` over K = k(other variables of the ring).
/// Factors are returned as primitive polynomial representatives (content in
/// the other variables removed), normalized by canonical_associate, sorted by
/// degree in `var` and then by printed form. Units of K are dropped, so a g
/// of degree 0 in `var` yields an empty list.
std::vector<Factor> factor_univariate(const Polynomial& g, std::size_t var);

/// Scales f to its canonical associate: leading coefficient 1 over F_p; over
/// Q integer coefficients with content 1 and positive leading coefficient.
Polynomial canonical_associate(const Polynomial& f);

}  // namespace hopfsmooth
