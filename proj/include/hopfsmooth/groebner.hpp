#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "hopfsmooth/limits.hpp"
#include "hopfsmooth/polynomial.hpp"

namespace hopfsmooth {

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division under the ring order. The largest remaining term is
/// always handled first, by the first divisor whose leading monomial divides
/// it. Zero divisors are skipped.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors);
/// Remainder only.
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors);

/// Cofactors (m_ij, m_ji) with coefficients: m_ji * g_i - m_ij * g_j has its
/// leading terms cancelled. m_ij = in(g_i) / gcd(in(g_i), in(g_j)) up to scalar.
struct SPairData {
  Term m_ij;
  Term m_ji;
};
SPairData s_pair_data(const Polynomial& gi, const Polynomial& gj);
Polynomial s_polynomial(const Polynomial& gi, const Polynomial& gj);

/// Buchberger's criterion with the coprime-leading-monomial skip. Zeros are
/// allowed and ignored.
bool is_groebner(const std::vector<Polynomial>& basis);

/// Verified Groebner basis. Only buchberger, verify and reduce_to_d_bounded
/// create one, so holding a value means the criterion has been checked.
class GroebnerBasis {
 public:
  /// Runs is_groebner and throws InvariantViolation("NotGroebner") on failure.
  static GroebnerBasis verify(const RingPtr& ring, std::vector<Polynomial> elements);

  const RingPtr& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return ring_->order(); }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  bool reduced() const noexcept { return reduced_; }
  /// True when the ideal is (1).
  bool is_unit() const;
  /// Largest total degree of a term over all elements (-1 if none).
  long max_degree() const;

  bool operator==(const GroebnerBasis& o) const { return gens_ == o.gens_; }

 private:
  friend GroebnerBasis buchberger(const std::vector<Polynomial>&, const RingPtr&, const ResourceLimits&);
  friend GroebnerBasis reduce_to_d_bounded(const GroebnerBasis&, std::size_t, bool);
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens, bool reduced)
      : ring_(std::move(ring)), gens_(std::move(gens)), reduced_(reduced) {}

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  bool reduced_ = false;
};

/// Reduced Groebner basis (monic, sorted by increasing leading monomial).
/// Normal pair selection with the product and chain criteria. Throws
/// ResourceLimitExceeded rather than returning a partial answer.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const RingPtr& ring,
                         const ResourceLimits& limits = default_limits());
/// Convenience overload; gens must be nonempty.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens);

/// Removes repeated leading monomials by subtracting multiples, so that at
/// most d elements are nonzero. With pad, zeros are appended up to length d.
GroebnerBasis reduce_to_d_bounded(const GroebnerBasis& basis, std::size_t d, bool pad = false);

bool member(const Polynomial& f, const GroebnerBasis& basis);

/// Groebner basis of (gens) ∩ k[kept variables], in the same ring. `eliminated`
/// flags the variables to remove. A block order (eliminated block heavy) is
/// used unless use_lex is set.
GroebnerBasis eliminate(const std::vector<Polynomial>& gens, const RingPtr& ring, const std::vector<bool>& eliminated,
                        bool use_lex = false);
/// Keeps the first r variables and returns the basis in k[x_1..x_r].
GroebnerBasis eliminate_keep_first(const std::vector<Polynomial>& gens, const RingPtr& ring, std::size_t r,
                                   bool use_lex = false);

/// Krull dimension of S/I; -1 for the unit ideal.
int dimension(const GroebnerBasis& basis);
/// Lexicographically first (in declaration order) maximum-size set of
/// variables containing no leading-monomial support. Throws on (1).
std::vector<std::size_t> max_independent_set(const GroebnerBasis& basis);

struct DubeBound {
  mpz_class fine;    // ceil(2 (d^2/2 + d)^(2^(n-1)))
  mpz_class coarse;  // 2 d^(2^n)
};
DubeBound dube_bound(std::uint32_t d, std::uint32_t n);

/// Cofactors q with f = sum q_i gens_i; throws InvariantViolation("NotMember")
/// when f is outside the ideal. Cofactor tracking makes this slower than
/// member; it is meant for certificates.
std::vector<Polynomial> lift(const Polynomial& f, const std::vector<Polynomial>& gens);

/// One entry per buchberger call while a recorder is alive on this thread.
struct GroebnerRecord {
  std::uint32_t input_degree;
  std::size_t nvars;
  std::uint32_t output_degree;
};

class GroebnerRecorder {
 public:
  GroebnerRecorder();
  ~GroebnerRecorder();
  GroebnerRecorder(const GroebnerRecorder&) = delete;
  GroebnerRecorder& operator=(const GroebnerRecorder&) = delete;

  const std::vector<GroebnerRecord>& records() const noexcept { return records_; }
  /// Enclosing recorders on the same thread see the record too.
  void add(const GroebnerRecord& r) {
    records_.push_back(r);
    if (previous_) previous_->add(r);
  }

 private:
  GroebnerRecorder* previous_;
  std::vector<GroebnerRecord> records_;
};

}  // namespace hopfsmooth
