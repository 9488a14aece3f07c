#include "hopfsmooth/factor.hpp"

#include <algorithm>
#include <numeric>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/gcd.hpp"
#include "hopfsmooth/limits.hpp"
#include "hopfsmooth/univariate.hpp"

namespace hopfsmooth {

Polynomial canonical_associate(const Polynomial& f) {
  if (f.is_zero()) return f;
  if (f.field().kind() == FieldKind::Prime) return f.monic();
  mpz_class den = 1, num = 0;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const auto& t : f.terms()) {
    mpz_class v = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  Coeff s(den, num);
  s.canonicalize();
  if (f.leading_coeff() < 0) s = -s;
  return f.scale(s);
}

namespace {

// Dense coefficient vector (low to high) of a polynomial in a single variable.
std::vector<Coeff> dense(const Polynomial& f, std::size_t var) {
  std::vector<Coeff> c(static_cast<std::size_t>(std::max<long>(f.degree_in(var), 0)) + 1, Coeff(0));
  for (const auto& t : f.terms()) c[t.monomial[var]] = t.coeff;
  return c;
}

Polynomial from_dense(const RingPtr& ring, std::size_t var, const std::vector<Coeff>& c) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) terms.push_back({Monomial::variable(ring->nvars(), var, static_cast<std::uint32_t>(i)), c[i]});
  return Polynomial::from_terms(ring, std::move(terms));
}

ZPoly to_zpoly(const Polynomial& f, std::size_t var) {
  Polynomial g = canonical_associate(f);
  ZPoly z;
  for (const auto& c : dense(g, var)) z.push_back(c.get_num());
  return z;
}

struct Irreducible {
  Polynomial poly;  // in a one-variable ring
  unsigned mult;
};

// Factorization over the base field of a polynomial in one variable (index 0
// of a one-variable ring).
std::vector<Irreducible> factor_over_base(const Polynomial& f) {
  const RingPtr& ring = f.ring();
  std::vector<Irreducible> out;
  if (f.total_degree() < 1) return out;
  if (ring->field().kind() == FieldKind::Prime) {
    const mpz_class& p = ring->field().modulus();
    std::vector<mpz_class> coeffs;
    for (const auto& c : dense(f, 0)) coeffs.push_back(c.get_num());
    for (auto& [g, m] : factor_mod(ModPoly(p, coeffs))) {
      std::vector<Coeff> c;
      for (const auto& v : g.coeffs()) c.emplace_back(v);
      out.push_back({from_dense(ring, 0, c), m});
    }
    return out;
  }
  // Yun's squarefree decomposition over Q, then each part over Z.
  Polynomial df = f.derivative(0);
  Polynomial a0 = poly_gcd(f, df);
  Polynomial b = exact_divide(f, a0);
  Polynomial c = exact_divide(df, a0);
  Polynomial d = c - b.derivative(0);
  unsigned i = 1;
  while (b.total_degree() > 0) {
    Polynomial a = poly_gcd(b, d);
    if (a.total_degree() > 0) {
      for (const auto& z : factor_squarefree_z(to_zpoly(a, 0))) {
        std::vector<Coeff> cc;
        for (const auto& v : z) cc.emplace_back(v);
        out.push_back({from_dense(ring, 0, cc), i});
      }
    }
    b = exact_divide(b, a);
    c = exact_divide(d, a);
    d = c - b.derivative(0);
    ++i;
  }
  return out;
}

bool factor_less(const Factor& a, const Factor& b, std::size_t var) {
  long da = a.factor.degree_in(var), db = b.factor.degree_in(var);
  if (da != db) return da < db;
  return a.factor.to_string() < b.factor.to_string();
}

}  // namespace

std::vector<Factor> factor_univariate(const Polynomial& g, std::size_t var) {
  if (g.is_zero()) throw InputError("ZeroPolynomial", "cannot factor the zero polynomial");
  const RingPtr& ring = g.ring();
  if (!ring->field().is_field()) throw InputError("NotAField", "factorization needs a coefficient field");
  if (g.degree_in(var) <= 0) return {};
  const auto& limits = default_limits();
  if (static_cast<std::uint64_t>(g.total_degree()) > limits.max_degree)
    throw ResourceLimitExceeded("factorization degree " + std::to_string(g.total_degree()) + " exceeds the ceiling " +
                                std::to_string(limits.max_degree));

  Polynomial h = exact_divide(g, content_in(g, var));
  std::vector<std::size_t> used;
  {
    auto u = h.used_variables();
    used.push_back(var);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] && i != var) used.push_back(i);
  }

  // Kronecker substitution: variable used[k] becomes z^(D^k).
  std::uint32_t D = 1;
  for (auto i : used) D = std::max<std::uint32_t>(D, static_cast<std::uint32_t>(h.degree_in(i)) + 1);
  std::vector<std::uint64_t> weight(used.size(), 1);
  for (std::size_t k = 1; k < used.size(); ++k) {
    weight[k] = weight[k - 1] * D;
    if (weight[k] > limits.max_terms) throw ResourceLimitExceeded("Kronecker substitution degree too large");
  }
  RingPtr zring = Ring::make(ring->field(), {"z"});
  std::vector<Term> zterms;
  for (const auto& t : h.terms()) {
    std::uint64_t e = 0;
    for (std::size_t k = 0; k < used.size(); ++k) e += weight[k] * t.monomial[used[k]];
    if (e > 4 * static_cast<std::uint64_t>(limits.max_degree) * D)
      throw ResourceLimitExceeded("Kronecker image degree too large");
    zterms.push_back({Monomial::variable(1, 0, static_cast<std::uint32_t>(e)), t.coeff});
  }
  Polynomial H = Polynomial::from_terms(zring, std::move(zterms));
  std::vector<Irreducible> pieces = factor_over_base(H);

  auto unkronecker = [&](const Polynomial& P) -> std::optional<Polynomial> {
    std::vector<Term> terms;
    for (const auto& t : P.terms()) {
      std::uint64_t e = t.monomial[0];
      std::vector<std::uint32_t> exps(ring->nvars(), 0);
      for (std::size_t k = 0; k < used.size(); ++k) {
        exps[used[k]] = static_cast<std::uint32_t>(e % D);
        e /= D;
      }
      if (e != 0) return std::nullopt;
      terms.push_back({Monomial(std::move(exps)), t.coeff});
    }
    return Polynomial::from_terms(ring, std::move(terms));
  };

  std::vector<Factor> out;
  std::vector<unsigned> avail;
  for (const auto& p : pieces) avail.push_back(p.mult);
  while (h.degree_in(var) > 0) {
    // Sub-multisets of the remaining pieces, smallest z-degree first.
    std::uint64_t count = 1;
    for (auto a : avail) {
      count *= a + 1;
      if (count > (1u << 18)) throw ResourceLimitExceeded("too many factor combinations");
    }
    std::vector<std::pair<long, std::vector<unsigned>>> candidates;
    std::vector<unsigned> k(avail.size(), 0);
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t r = c;
      long deg = 0;
      for (std::size_t j = 0; j < avail.size(); ++j) {
        k[j] = static_cast<unsigned>(r % (avail[j] + 1));
        r /= avail[j] + 1;
        deg += static_cast<long>(k[j]) * pieces[j].poly.total_degree();
      }
      if (deg > 0) candidates.emplace_back(deg, k);
    }
    std::sort(candidates.begin(), candidates.end());
    bool found = false;
    for (const auto& [deg, sel] : candidates) {
      Polynomial prod = Polynomial::constant(zring, 1);
      for (std::size_t j = 0; j < sel.size(); ++j)
        if (sel[j]) prod *= pieces[j].poly.pow(sel[j]);
      auto cand = unkronecker(prod);
      if (!cand || cand->degree_in(var) <= 0) continue;
      auto q = try_divide(h, *cand);
      if (!q) continue;
      unsigned mult = 0;
      do {
        h = *q;
        ++mult;
        q = try_divide(h, *cand);
      } while (q);
      for (std::size_t j = 0; j < sel.size(); ++j) avail[j] -= sel[j] * mult;
      out.push_back({canonical_associate(*cand), mult});
      found = true;
      break;
    }
    if (!found) throw InvariantViolation("FactorRecombination", "no divisor found for " + h.to_string());
  }
  std::sort(out.begin(), out.end(), [&](const Factor& a, const Factor& b) { return factor_less(a, b, var); });
  return out;
}

}  // namespace hopfsmooth
