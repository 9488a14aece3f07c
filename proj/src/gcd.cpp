#include "hopfsmooth/gcd.hpp"

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

namespace {

Polynomial normalize_unit(const Polynomial& f) { return f.is_zero() ? f : f.monic(); }

Polynomial var_power(const RingPtr& ring, std::size_t var, std::uint32_t e) {
  return Polynomial::term(ring, Monomial::variable(ring->nvars(), var, e), 1);
}

// Index of some variable used by a or b, preferring the last one so that the
// recursion peels variables from the light end.
std::optional<std::size_t> pick_variable(const Polynomial& a, const Polynomial& b) {
  auto ua = a.used_variables();
  auto ub = b.used_variables();
  for (std::size_t i = ua.size(); i-- > 0;)
    if (ua[i] && ub[i]) return i;
  for (std::size_t i = ua.size(); i-- > 0;)
    if (ua[i] || ub[i]) return i;
  return std::nullopt;
}

}  // namespace

std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var) {
  long deg = f.degree_in(var);
  std::vector<std::vector<Term>> buckets(deg < 0 ? 0 : static_cast<std::size_t>(deg) + 1);
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> e(t.monomial.exponents().begin(), t.monomial.exponents().end());
    std::uint32_t k = e[var];
    e[var] = 0;
    buckets[k].push_back({Monomial(std::move(e)), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(f.ring(), std::move(b)));
  return out;
}

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvariantViolation("DivisionByZero", "division by the zero polynomial");
  const auto& field = a.field();
  Polynomial r = a;
  std::vector<Term> q;
  const Monomial& lb = b.leading_monomial();
  const Coeff lcinv = field.inv(b.leading_coeff());
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!lb.divides(lt.monomial)) return std::nullopt;
    Monomial m = lb.quotient_of(lt.monomial);
    Coeff c = field.mul(lt.coeff, lcinv);
    if (!field.is_field() && c.get_den() != 1) return std::nullopt;
    q.push_back({m, c});
    r = r.sub_mul_term(m, c, b);
  }
  return Polynomial::from_terms(a.ring(), std::move(q));
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) throw InvariantViolation("NotDivisible", b.to_string() + " does not divide " + a.to_string());
  return *q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  long db = b.degree_in(var);
  if (db < 0) throw InvariantViolation("DivisionByZero", "pseudo-division by zero");
  auto bc = coefficients_in(b, var);
  const Polynomial& lb = bc.back();
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    long dr = r.degree_in(var);
    Polynomial lr = coefficients_in(r, var).back();
    r = lb * r - lr * var_power(r.ring(), var, static_cast<std::uint32_t>(dr - db)) * b;
  }
  return r;
}

Polynomial content_in(const Polynomial& f, std::size_t var) {
  Polynomial g(f.ring());
  for (const auto& c : coefficients_in(f, var)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.ring(), 1);
  auto var = pick_variable(a, b);
  std::size_t v = *var;
  long da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return poly_gcd(a, content_in(b, v));
  if (db == 0) return poly_gcd(content_in(a, v), b);

  Polynomial ca = content_in(a, v), cb = content_in(b, v);
  Polynomial g = poly_gcd(ca, cb);
  Polynomial r0 = exact_divide(a, ca).monic();
  Polynomial r1 = exact_divide(b, cb).monic();
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
  while (true) {
    Polynomial r = pseudo_remainder(r0, r1, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      r1 = Polynomial::constant(a.ring(), 1);
      break;
    }
    r0 = std::move(r1);
    r1 = exact_divide(r, content_in(r, v)).monic();
  }
  return (g * r1).monic();
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring());
  return exact_divide(a * b, poly_gcd(a, b)).monic();
}

}  // namespace hopfsmooth
