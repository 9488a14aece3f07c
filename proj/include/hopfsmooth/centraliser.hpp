#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfsmooth/hopf.hpp"

namespace hopfsmooth {

/// Action of the group on one affine chart k[t_1..t_r]/I_1, given by the
/// images ᾱ(t_l) in k[x_1..x_n, t_1..t_r], optionally restricted to D(f).
struct ActionSpec {
  HopfQuadruple group;
  RingPtr chart;
  std::vector<Polynomial> chart_relations;
  RingPtr combined;  // group variables first, then chart variables
  std::vector<Polynomial> action;
  std::optional<Polynomial> localizer;

  static ActionSpec make(HopfQuadruple group, std::vector<std::string> chart_vars,
                         const std::vector<std::string>& relations, const std::vector<std::string>& action,
                         const std::optional<std::string>& localizer = std::nullopt);

  /// Largest monomial rank in the group variables over the action images,
  /// chart variables treated as constants.
  std::uint64_t bound() const;
  ActionSpec change_field(const Field& field) const;
};

using Point = std::vector<Coeff>;

/// h(ᾱ(t)) lies in the group ideal plus the chart relations for every chart
/// relation h.
bool respects_chart(const ActionSpec& A);

/// (group relations, ᾱ(t_l)(x, v) - v_l, u f(x, v) - 1) in k[x_1..x_n, u];
/// without a localizer the ring is the group ring itself.
Ideal centraliser_ideal(const ActionSpec& A, const Point& v);
/// Eliminates the localizing variable (the last one) when present, landing in
/// the group ring.
Ideal closure_ideal(const Ideal& I, const RingPtr& group_ring);
/// The isolated primary component through the counit point.
Ideal identity_component(const Ideal& J, const std::vector<Coeff>& counit);

struct CentraliserResult {
  HopfQuadruple quadruple;
  SmoothnessReport report;
  std::uint64_t bound;             // max monomial rank over the reduced basis
  std::vector<Ideal> per_point;    // J_v for each point
};

/// C_G(N) as the sum of the per-point ideals. With skip_component the full
/// closure ideal of each point is used instead of its identity component.
CentraliserResult centraliser_quadruple(const ActionSpec& A, const std::vector<Point>& points,
                                        bool skip_component = false);

namespace catalog {
/// GL_2 acting on A^2 by matrix multiplication.
ActionSpec natural_action(const Field& k);
/// GL_2 over F_p acting through the Frobenius twist: t_1 -> a^p t_1 + b^p t_2,
/// t_2 -> c^p t_1 + d^p t_2.
ActionSpec frobenius_twist(const mpz_class& p);
/// Every t_l fixed.
ActionSpec trivial_action(const HopfQuadruple& group, std::size_t r);
}  // namespace catalog

}  // namespace hopfsmooth
