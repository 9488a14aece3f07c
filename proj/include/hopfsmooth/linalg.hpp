#pragma once

#include <optional>
#include <vector>

#include "hopfsmooth/field.hpp"

namespace hopfsmooth {

using Matrix = std::vector<std::vector<Coeff>>;

/// Rank by exact Gaussian elimination over `field`.
std::size_t matrix_rank(const Field& field, Matrix m);

/// Some solution of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Coeff>> solve_linear(const Field& field, Matrix a, std::vector<Coeff> b);

}  // namespace hopfsmooth
