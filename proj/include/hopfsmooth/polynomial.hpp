#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopfsmooth/field.hpp"
#include "hopfsmooth/monomial.hpp"

namespace hopfsmooth {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// k[x_1..x_n] with a fixed monomial order. Variable priority follows
/// declaration order (first declared is largest).
class Ring {
 public:
  static RingPtr make(Field field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::graded_lex());

  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const MonomialOrder& order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  RingPtr with_order(MonomialOrder order) const;
  RingPtr with_field(Field field) const;

  bool same_as(const Ring& o) const noexcept {
    return this == &o || (field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_);
  }

 private:
  Ring(Field field, std::vector<std::string> vars, MonomialOrder order)
      : field_(std::move(field)), vars_(std::move(vars)), order_(std::move(order)) {}

  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

struct Term {
  Monomial monomial;
  Coeff coeff;
};

/// Sparse polynomial; terms are kept strictly descending in the ring order
/// with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Coeff& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial term(RingPtr ring, Monomial m, const Coeff& c);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  /// Trusts that terms are already strictly descending and nonzero.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_one() const;
  /// Leading data; the polynomial must be nonzero.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const Coeff& leading_coeff() const { return leading_term().coeff; }
  /// Maximum total degree of a term; -1 for zero.
  long total_degree() const;
  long degree_in(std::size_t var) const;
  /// Everything but the leading term.
  Polynomial tail() const;
  /// True when no term involves a variable outside `allowed` (indexed by variable).
  bool only_uses(const std::vector<bool>& allowed) const;
  std::vector<bool> used_variables() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const Coeff& c) const;
  Polynomial mul_term(const Monomial& m, const Coeff& c) const;
  /// *this - c * m * g, merged in one pass.
  Polynomial sub_mul_term(const Monomial& m, const Coeff& c, const Polynomial& g) const;
  Polynomial pow(unsigned e) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  Coeff evaluate(std::span<const Coeff> point) const;
  /// Algebra homomorphism x_i -> images[i]; images live in `target`.
  Polynomial substitute(const std::vector<Polynomial>& images, const RingPtr& target) const;
  /// Moves the polynomial into `target`, sending variable i to var_map[i].
  Polynomial remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
  /// Same variables and field, different order (re-sorts the terms).
  Polynomial in_ring(const RingPtr& target) const;
  Polynomial derivative(std::size_t var) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Canonical printing: descending graded-lex terms, no '*1' and no '^1'.
  std::string to_string() const;

 private:
  void check_same_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parses the ASCII grammar (terms of integer or a/b coefficients times
/// var^int factors, joined by + and -; parentheses are also accepted).
Polynomial parse_poly(std::string_view text, const RingPtr& ring);

/// Dense coefficient vector over the first d graded-lex monomials.
struct BoundedPoly {
  std::size_t d = 0;
  std::vector<Coeff> coeffs;
};

/// Throws InputError("UnboundedTerm") when a term has rank above d.
BoundedPoly to_bounded(const Polynomial& f, std::size_t d);
Polynomial from_bounded(const BoundedPoly& b, const RingPtr& ring);

/// Coefficient-wise reduction of a Z or Q polynomial into F_p.
Polynomial base_change(const Polynomial& f, const mpz_class& p);
Polynomial base_change(const Polynomial& f, const RingPtr& target);

std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars);

}  // namespace hopfsmooth
