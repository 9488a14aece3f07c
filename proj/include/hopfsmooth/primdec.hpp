#pragma once

#include <optional>
#include <vector>

#include "hopfsmooth/factor.hpp"
#include "hopfsmooth/ideal.hpp"

namespace hopfsmooth {

struct PrimaryComponent {
  Ideal ideal;
  /// Maximal ideal of the zero-dimensional localization the component came
  /// from (contracted back to S); absent when not tracked.
  std::optional<Ideal> witness;
  bool isolated = true;
};

enum class Verdict { False, True, Unknown };
const char* to_string(Verdict v);

/// Primary decomposition of a zero-dimensional I ⊗ k(parameters). Returned
/// components and witnesses are already contracted to S.
std::vector<PrimaryComponent> primdec_zero_dim(const Ideal& I, const std::vector<std::size_t>& parameters);

/// Irredundant primary decomposition with components sorted by their reduced
/// basis; equal-radical components are merged and isolated flags are set.
std::vector<PrimaryComponent> primdec(const Ideal& I);

/// Decides whether Q is primary. Unknown only when the search for a
/// certificate (a generator of the residue field) gives up.
Verdict is_primary(const Ideal& Q);

/// Sets isolated flags by pairwise radical containment.
std::vector<PrimaryComponent> classify_isolated(std::vector<PrimaryComponent> components);

/// Generator of (I ⊗ k(parameters)) ∩ k(parameters)[x_var], as a polynomial
/// in x_var and the parameters. Requires the intersection to be nonzero.
Polynomial eliminant(const Ideal& I, std::size_t var, const std::vector<std::size_t>& parameters);

/// True when I ⊗ k(parameters) is the unit ideal.
bool unit_over_fraction_field(const Ideal& I, const std::vector<std::size_t>& parameters);

}  // namespace hopfsmooth
