#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hopfsmooth/groebner.hpp"

namespace hopfsmooth {

/// Ideal given by generators; its reduced Groebner basis under the ring
/// order is computed on first use and shared between copies.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens);
  static Ideal unit(const RingPtr& ring);
  static Ideal zero(const RingPtr& ring);
  /// Uses `basis` as the cached Groebner basis after checking that it
  /// generates the same ideal as `gens`.
  static Ideal with_basis(std::vector<Polynomial> gens, const GroebnerBasis& basis);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const GroebnerBasis& groebner() const;

  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& o) const;
  bool equals(const Ideal& o) const { return contains(o) && o.contains(*this); }
  bool is_unit() const { return groebner().is_unit(); }
  bool is_zero() const { return groebner().generators().empty(); }
  int dimension() const { return hopfsmooth::dimension(groebner()); }

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal plus(const std::vector<Polynomial>& more) const;

  /// The ideal generated by its reduced basis; two ideals are equal exactly
  /// when their canonical forms print identically.
  Ideal canonical() const;
  std::vector<std::string> fingerprint() const;
  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<GroebnerBasis> basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Ring with one extra variable appended, named from `hint` and distinct from
/// every existing name.
RingPtr extend_ring(const RingPtr& ring, const std::string& hint, bool heavy_front = false);

Ideal intersect(const Ideal& a, const Ideal& b);
/// (I : f^s) by s successive single quotients (I ∩ (f)) / f.
Ideal quotient(const Ideal& I, const Polynomial& f, unsigned s);

struct Saturation {
  Ideal ideal;
  unsigned exponent;
};
/// (I : f^∞) together with the least s with (I : f^s) = (I : f^∞).
Saturation saturate(const Ideal& I, const Polynomial& f);

struct RadicalMembership {
  bool member;
  std::optional<unsigned> exponent;  // least e with f^e in I
};
RadicalMembership radical_member(const Polynomial& f, const Ideal& I);

/// lcm of the head coefficients HC(g) (polynomials in the parameters) over a
/// Groebner basis for the block order with the other variables heavy.
Polynomial head_coefficient_lcm(const Ideal& I, const std::vector<std::size_t>& parameters);

struct Contraction {
  Ideal ideal;
  Polynomial localizer;  // the lcm f
  unsigned exponent;     // saturation exponent of I by f
};
/// (I ⊗ k(parameters)) ∩ S computed as (I : f^∞).
Contraction contract(const Ideal& I, const std::vector<std::size_t>& parameters);

}  // namespace hopfsmooth
