#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace hopfsmooth {

/// Dense univariate polynomial over Z/pZ, coefficients low to high, always
/// trimmed. The modulus may be any prime that fits in GMP.
class ModPoly {
 public:
  explicit ModPoly(mpz_class p) : p_(std::move(p)) {}
  ModPoly(mpz_class p, std::vector<mpz_class> coeffs);

  static ModPoly x(const mpz_class& p) { return ModPoly(p, {0, 1}); }
  static ModPoly constant(const mpz_class& p, const mpz_class& c) { return ModPoly(p, {c}); }

  const mpz_class& modulus() const noexcept { return p_; }
  const std::vector<mpz_class>& coeffs() const noexcept { return c_; }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  const mpz_class& lead() const { return c_.back(); }

  ModPoly operator+(const ModPoly& o) const;
  ModPoly operator-(const ModPoly& o) const;
  ModPoly operator*(const ModPoly& o) const;
  ModPoly scale(const mpz_class& s) const;
  ModPoly monic() const;
  ModPoly derivative() const;
  /// Quotient and remainder; o must be nonzero.
  std::pair<ModPoly, ModPoly> divrem(const ModPoly& o) const;
  ModPoly operator%(const ModPoly& o) const { return divrem(o).second; }
  ModPoly operator/(const ModPoly& o) const { return divrem(o).first; }

  bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void trim();

  mpz_class p_;
  std::vector<mpz_class> c_;
};

/// Monic gcd.
ModPoly gcd(const ModPoly& a, const ModPoly& b);
/// base^e mod m.
ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& m);

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities (squarefree split, distinct-degree, then equal-degree by
/// Cantor-Zassenhaus with a fixed seed). The leading coefficient is dropped.
std::vector<std::pair<ModPoly, unsigned>> factor_mod(const ModPoly& f, std::uint64_t seed = 0x5eedULL);

/// Dense integer polynomial, coefficients low to high.
using ZPoly = std::vector<mpz_class>;

/// Factors a primitive squarefree integer polynomial of positive degree into
/// irreducibles over Z (positive leading coefficients). Uses one large prime
/// beyond the coefficient bound and exhaustive recombination.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f);

}  // namespace hopfsmooth
