#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfsmooth/ideal.hpp"

namespace hopfsmooth {

/// S^{⊗r} as k[x_{1,1}..x_{r,n}] with graded-lex order, copies in order. Copy j
/// of variable x is named x followed by j primes (no primes when r = 1).
RingPtr tensor_ring(const RingPtr& ring, unsigned r);
/// Copy j (1-based) of f inside S^{⊗r}.
Polynomial tensor_copy(const Polynomial& f, const RingPtr& tensor, unsigned j);
/// B_r: every generator evaluated in every copy, copy-major.
std::vector<Polynomial> tensor_presentation(const std::vector<Polynomial>& gens, const RingPtr& ring, unsigned r);

/// True when x_i -> images[i] (in S^{⊗r}) induces S/I -> (S/I)^{⊗r}.
bool factors_through(const std::vector<Polynomial>& images, const std::vector<Polynomial>& relations,
                     const RingPtr& ring, unsigned r);
/// The r = 0 case: the point lies on V(I).
bool factors_through(const std::vector<Coeff>& point, const std::vector<Polynomial>& relations);

struct HopfReport {
  bool valid = false;
  std::string failed_axiom;  // empty when valid
  std::string detail;
};

/// (B, Δ, σ, ε) on S = k[x_1..x_n]: relations B, Δ(x_i) in S^{⊗2}, σ(x_i) in S
/// and the counit point ε(x_i) in k.
class HopfQuadruple {
 public:
  HopfQuadruple(RingPtr ring, std::vector<Polynomial> relations, std::vector<Polynomial> comul,
                std::vector<Polynomial> antipode, std::vector<Coeff> counit);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  const std::vector<Polynomial>& comul() const noexcept { return comul_; }
  const std::vector<Polynomial>& antipode() const noexcept { return antipode_; }
  const std::vector<Coeff>& counit() const noexcept { return counit_; }
  const Ideal& ideal() const noexcept { return ideal_; }

  /// Axiom verification, computed once and shared between copies.
  const HopfReport& check() const;
  bool is_hopf() const { return check().valid; }
  /// Least d with B, Δ and σ all d-bounded and |B| <= d.
  std::uint64_t bound() const;

 private:
  struct State;
  RingPtr ring_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> comul_;
  std::vector<Polynomial> antipode_;
  std::vector<Coeff> counit_;
  Ideal ideal_;
  std::shared_ptr<State> state_;
};

/// n minus the rank of (ε(∂f_k/∂x_l)).
int lie_dimension(const HopfQuadruple& H);
int group_dimension(const HopfQuadruple& H);

struct SmoothnessReport {
  int group_dim;
  int lie_dim;
  bool smooth;
  mpz_class characteristic;
};
SmoothnessReport is_smooth(const HopfQuadruple& H);

/// Coefficient-wise reduction of a quadruple over Z or Q into F_p.
HopfQuadruple base_change_quadruple(const HopfQuadruple& H, const mpz_class& p);
/// Moves a quadruple over Z or Q to any field (or keeps it when equal).
HopfQuadruple change_field(const HopfQuadruple& H, const Field& field);

namespace catalog {
HopfQuadruple additive(const Field& k);
HopfQuadruple multiplicative(const Field& k);
HopfQuadruple roots_of_unity(const Field& k, unsigned n);
HopfQuadruple special_linear(const Field& k);
/// GL_2 as k[a,b,c,d,u]/(u(ad - bc) - 1).
HopfQuadruple general_linear(const Field& k);
/// α_p = k[x]/(x^p) with additive structure, over F_p.
HopfQuadruple alpha(const mpz_class& p);
}  // namespace catalog

}  // namespace hopfsmooth
