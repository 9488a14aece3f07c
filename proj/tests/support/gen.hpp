#pragma once

#include <random>
#include <vector>

#include "hopfsmooth/polynomial.hpp"

namespace testgen {

using namespace hopfsmooth;

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t n, std::uint32_t max_deg) {
  std::uniform_int_distribution<std::uint32_t> deg(0, max_deg);
  std::uint32_t d = deg(rng);
  std::vector<std::uint32_t> e(n, 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint32_t i = 0; i < d && n > 0; ++i) ++e[pick(rng)];
  return Monomial(std::move(e));
}

inline Coeff random_coeff(std::mt19937_64& rng, const Field& field, int range = 5, bool fractions = false) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  Coeff c = fractions ? Coeff(num(rng), den(rng)) : Coeff(num(rng));
  c.canonicalize();
  return field.normalize(c);
}

inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring, std::uint32_t max_deg, int max_terms,
                              bool fractions = false) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::vector<Term> terms;
  int k = nt(rng);
  for (int i = 0; i < k; ++i)
    terms.push_back({random_monomial(rng, ring->nvars(), max_deg), random_coeff(rng, ring->field(), 5, fractions)});
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial random_nonzero(std::mt19937_64& rng, const RingPtr& ring, std::uint32_t max_deg, int max_terms) {
  while (true) {
    Polynomial p = random_poly(rng, ring, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

// Random element of the span of m_1..m_d: the top rank is uniform in 0..d
// (0 gives zero) and lower slots are filled with probability 1/2.
inline Polynomial random_bounded(std::mt19937_64& rng, const RingPtr& ring, std::size_t d) {
  std::uniform_int_distribution<std::size_t> top(0, d);
  std::bernoulli_distribution fill(0.5);
  const std::size_t t = top(rng);
  std::vector<Term> terms;
  for (std::size_t j = 1; j <= t; ++j) {
    if (j < t && !fill(rng)) continue;
    Coeff c;
    do c = random_coeff(rng, ring->field(), 3);
    while (c == 0);
    terms.push_back({monomial_unrank(j, ring->nvars()), c});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace testgen
