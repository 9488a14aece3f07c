#pragma once

#include <optional>
#include <vector>

#include "hopfsmooth/polynomial.hpp"

namespace hopfsmooth {

/// Coefficients of f viewed as a polynomial in `var`; entry i multiplies var^i
/// and does not involve `var`.
std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws InvariantViolation("NotDivisible") otherwise.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b with respect to `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

/// Multivariate gcd over the coefficient field by recursive primitive
/// remainder sequences. The result has leading coefficient 1 (0 when both
/// inputs vanish).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of f with respect to `var` (normalized as above).
Polynomial content_in(const Polynomial& f, std::size_t var);

}  // namespace hopfsmooth
