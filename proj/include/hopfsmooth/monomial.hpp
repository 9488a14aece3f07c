#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hopfsmooth {

/// Exponent vector x_1^{a_1} ... x_n^{a_n}, with its total degree cached.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  Monomial operator*(const Monomial& o) const;
  /// True when *this divides o.
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial pow(std::uint32_t e) const;
  /// Indices of the variables with positive exponent.
  std::vector<std::size_t> support() const;

  bool operator==(const Monomial& o) const noexcept { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const noexcept { return exps_ != o.exps_; }

  std::size_t hash() const noexcept;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Admissible monomial orders. GradedLex compares total degree first and then
/// the first differing exponent (larger exponent wins, x_1 most significant).
/// Block orders split the variables into consecutive blocks, earlier blocks
/// heavier, each block compared graded-lexicographically; pure Lex is the
/// block order with blocks of size one.
class MonomialOrder {
 public:
  enum class Kind { GradedLex, Lex, Block };

  static MonomialOrder graded_lex() { return MonomialOrder(Kind::GradedLex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder block(std::vector<std::size_t> sizes);
  /// "grlex", "lex" or "block:r" (first r variables heavy).
  static MonomialOrder parse(const std::string& text, std::size_t nvars);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

  /// Throws InputError on an exponent-length mismatch or block sizes that
  /// do not cover the variables.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  void check_arity(std::size_t nvars) const;

  std::string name() const;

  bool operator==(const MonomialOrder& o) const noexcept { return kind_ == o.kind_ && blocks_ == o.blocks_; }

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> blocks) : kind_(kind), blocks_(std::move(blocks)) {}

  Kind kind_;
  std::vector<std::size_t> blocks_;
};

/// Position of m in the graded-lex enumeration m_1 = 1 < m_2 < ... (1-based).
std::uint64_t monomial_rank(const Monomial& m);
/// Inverse of monomial_rank; k must be >= 1.
Monomial monomial_unrank(std::uint64_t k, std::size_t nvars);
/// Number of monomials in n variables of total degree at most t.
std::uint64_t monomials_up_to_degree(std::size_t nvars, std::uint32_t t);

}  // namespace hopfsmooth
