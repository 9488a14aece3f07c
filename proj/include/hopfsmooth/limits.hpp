#pragma once

#include <cstddef>
#include <cstdint>

namespace hopfsmooth {

/// Ceilings enforced by the Gröbner engine. Exceeding any of them raises
/// ResourceLimitExceeded instead of returning a partial answer.
struct ResourceLimits {
  std::uint32_t max_degree = 64;
  std::size_t max_basis_size = 4000;
  std::size_t max_pairs = 200000;
  std::size_t max_terms = 200000;
};

/// Process-wide defaults. HOPFSMOOTH_DEGREE_LIMIT overrides max_degree.
const ResourceLimits& default_limits();

/// Replaces the process-wide defaults (CLI --degree-limit).
void set_default_limits(const ResourceLimits& limits);

}  // namespace hopfsmooth
