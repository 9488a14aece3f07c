#pragma once

// Independent reference procedures used to check the engine. They share only
// the polynomial container with the library, never its algorithms.

#include <map>
#include <optional>
#include <vector>

#include "hopfsmooth/polynomial.hpp"

namespace oracle {

using namespace hopfsmooth;

// Gaussian elimination written directly on mpq/mpz so that it is independent
// of the library's linear algebra.
class Elim {
 public:
  explicit Elim(mpz_class p) : p_(std::move(p)) {}

  mpq_class norm(const mpq_class& v) const {
    if (p_ == 0) return v;
    mpz_class n = v.get_num() % p_;
    if (n < 0) n += p_;
    mpz_class d = v.get_den() % p_;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), p_.get_mpz_t());
    return mpq_class(mpz_class((n * inv) % p_));
  }
  mpq_class inv(const mpq_class& v) const {
    if (p_ == 0) return 1 / v;
    mpz_class r;
    mpz_invert(r.get_mpz_t(), v.get_num_mpz_t(), p_.get_mpz_t());
    return mpq_class(r);
  }

  // Augmented rows [A | b]; true when consistent.
  bool consistent(std::vector<std::vector<mpq_class>> rows, std::size_t cols) const {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t s = r;
      while (s < rows.size() && norm(rows[s][c]) == 0) ++s;
      if (s == rows.size()) continue;
      std::swap(rows[r], rows[s]);
      mpq_class iv = inv(norm(rows[r][c]));
      for (auto& v : rows[r]) v = norm(v * iv);
      for (std::size_t t = 0; t < rows.size(); ++t) {
        if (t == r) continue;
        mpq_class f = norm(rows[t][c]);
        if (f == 0) continue;
        for (std::size_t k = 0; k <= cols; ++k) rows[t][k] = norm(rows[t][k] - f * rows[r][k]);
      }
      ++r;
    }
    for (std::size_t t = r; t < rows.size(); ++t)
      if (norm(rows[t][cols]) != 0) return false;
    return true;
  }

  std::size_t rank(std::vector<std::vector<mpq_class>> rows) const {
    if (rows.empty()) return 0;
    std::size_t cols = rows.front().size();
    for (auto& row : rows) row.push_back(0);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t s = r;
      while (s < rows.size() && norm(rows[s][c]) == 0) ++s;
      if (s == rows.size()) continue;
      std::swap(rows[r], rows[s]);
      mpq_class iv = inv(norm(rows[r][c]));
      for (auto& v : rows[r]) v = norm(v * iv);
      for (std::size_t t = 0; t < rows.size(); ++t) {
        if (t == r) continue;
        mpq_class f = norm(rows[t][c]);
        if (f == 0) continue;
        for (std::size_t k = 0; k < cols; ++k) rows[t][k] = norm(rows[t][k] - f * rows[r][k]);
      }
      ++r;
    }
    return r;
  }

 private:
  mpz_class p_;
};

inline std::vector<std::vector<std::uint32_t>> exponents_up_to(std::size_t n, std::uint32_t deg) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> e(n, 0);
  // Odometer over all exponent vectors with entries <= deg, filtered by degree.
  while (true) {
    std::uint32_t s = 0;
    for (auto v : e) s += v;
    if (s <= deg) out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == deg) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return out;
}

// Is there q_i with deg(q_i g_i) <= D and f = sum q_i g_i?  Pure linear algebra
// on coefficient vectors; no Groebner machinery.
inline bool member_at_degree(const Polynomial& f, const std::vector<Polynomial>& gens, std::uint32_t D) {
  const std::size_t n = f.ring()->nvars();
  Elim el(f.field().characteristic());
  std::map<std::vector<std::uint32_t>, std::size_t> row_of;
  auto row = [&](const Monomial& m) {
    std::vector<std::uint32_t> key(m.exponents().begin(), m.exponents().end());
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    std::size_t id = row_of.size();
    row_of.emplace(std::move(key), id);
    return id;
  };
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> columns;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() > static_cast<long>(D)) continue;
    for (const auto& e : exponents_up_to(n, D - static_cast<std::uint32_t>(g.total_degree()))) {
      Monomial m(e);
      std::vector<std::pair<std::size_t, mpq_class>> col;
      for (const auto& t : g.terms()) col.emplace_back(row((m * t.monomial)), t.coeff);
      columns.push_back(std::move(col));
    }
  }
  std::vector<std::pair<std::size_t, mpq_class>> rhs;
  for (const auto& t : f.terms()) rhs.emplace_back(row(t.monomial), t.coeff);
  const std::size_t cols = columns.size();
  std::vector<std::vector<mpq_class>> rows(row_of.size(), std::vector<mpq_class>(cols + 1, 0));
  for (std::size_t c = 0; c < cols; ++c)
    for (auto& [r, v] : columns[c]) rows[r][c] += v;
  for (auto& [r, v] : rhs) rows[r][cols] += v;
  return el.consistent(std::move(rows), cols);
}

// Krull dimension of k[x]/M for a monomial ideal M from the growth of the
// affine Hilbert function (number of standard monomials of degree <= t).
inline int monomial_ideal_dimension(const std::vector<Monomial>& gens, std::size_t n, std::uint32_t t_max = 24) {
  std::vector<long> hf;
  for (std::uint32_t t = 0; t <= t_max; ++t) {
    long count = 0;
    for (const auto& e : exponents_up_to(n, t)) {
      Monomial m(e);
      bool standard = true;
      for (const auto& g : gens)
        if (g.divides(m)) {
          standard = false;
          break;
        }
      if (standard) ++count;
    }
    hf.push_back(count);
  }
  if (hf.back() == 0) return -1;
  // Finite differences of the tail until constant; the number of steps
  // taken to reach a constant sequence is the degree of the polynomial.
  std::vector<long> seq(hf.end() - 10, hf.end());
  int degree = 0;
  while (true) {
    bool constant = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] != seq[0]) constant = false;
    if (constant) return degree;
    std::vector<long> next;
    for (std::size_t i = 1; i < seq.size(); ++i) next.push_back(seq[i] - seq[i - 1]);
    seq = std::move(next);
    ++degree;
  }
}

}  // namespace oracle
