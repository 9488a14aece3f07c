#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hopfsmooth {

/// Coefficients are exact rationals. Over a prime field only the canonical
/// integer representatives 0..p-1 are ever stored.
using Coeff = mpq_class;

enum class FieldKind { Rationals, Prime, Integers };

/// The coefficient ring of a polynomial ring: Q, F_p, or Z (Z only as an
/// input ring for base change; it has no division).
class Field {
 public:
  static Field rationals();
  static Field integers();
  /// Throws InputError when p is not prime.
  static Field prime(const mpz_class& p);
  /// Accepts "Q", "Z", "Fp:<p>" and "F<p>".
  static Field parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == FieldKind::Prime; }
  bool is_field() const noexcept { return kind_ != FieldKind::Integers; }
  const mpz_class& modulus() const noexcept { return p_; }
  /// 0 for Q and Z.
  mpz_class characteristic() const;
  std::string name() const;

  Coeff normalize(const Coeff& c) const;
  Coeff from_int(long v) const { return normalize(Coeff(v)); }
  Coeff from_mpz(const mpz_class& v) const { return normalize(Coeff(v)); }
  /// Parses an integer or a/b literal (an optional leading '-' is allowed).
  Coeff parse_literal(std::string_view text) const;

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }
  Coeff pow(const Coeff& a, unsigned long e) const;

  std::string to_string(const Coeff& c) const;

  bool operator==(const Field& o) const noexcept { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const noexcept { return !(*this == o); }

 private:
  Field(FieldKind kind, mpz_class p) : kind_(kind), p_(std::move(p)) {}

  FieldKind kind_;
  mpz_class p_;
};

bool is_probable_prime(const mpz_class& n);

/// Inverse of a modulo m by extended Euclid; a must be a unit.
mpz_class mod_inverse(const mpz_class& a, const mpz_class& m);

}  // namespace hopfsmooth
