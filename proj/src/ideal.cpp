#include "hopfsmooth/ideal.hpp"

#include <algorithm>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/gcd.hpp"

namespace hopfsmooth {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_)
    if (!g.ring() || !g.ring()->same_as(*ring_)) throw InputError("RingMismatch", "generator from a different ring");
}

Ideal Ideal::unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
Ideal Ideal::zero(const RingPtr& ring) { return Ideal(ring, {}); }

Ideal Ideal::with_basis(std::vector<Polynomial> gens, const GroebnerBasis& basis) {
  Ideal out(basis.ring(), std::move(gens));
  for (const auto& g : out.gens_)
    if (!member(g, basis)) throw InvariantViolation("BasisMismatch", "attached basis misses a generator");
  for (const auto& b : basis.generators())
    if (!b.is_zero() && !member(b, buchberger(out.gens_, out.ring_)))
      throw InvariantViolation("BasisMismatch", "attached basis is larger than the ideal");
  std::call_once(out.cache_->once, [&] { out.cache_->basis = basis; });
  return out;
}

const GroebnerBasis& Ideal::groebner() const {
  std::call_once(cache_->once, [&] { cache_->basis = buchberger(gens_, ring_); });
  return *cache_->basis;
}

bool Ideal::contains(const Polynomial& f) const { return member(f, groebner()); }

bool Ideal::contains(const Ideal& o) const {
  for (const auto& g : o.groebner().generators())
    if (!contains(g)) return false;
  return true;
}

Ideal Ideal::operator+(const Ideal& o) const { return plus(o.gens_); }

Ideal Ideal::plus(const std::vector<Polynomial>& more) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), more.begin(), more.end());
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  std::vector<Polynomial> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * b);
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::canonical() const { return with_basis(groebner().generators(), groebner()); }

std::vector<std::string> Ideal::fingerprint() const {
  std::vector<std::string> out;
  for (const auto& g : groebner().generators()) out.push_back(g.to_string());
  return out;
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

RingPtr extend_ring(const RingPtr& ring, const std::string& hint, bool heavy_front) {
  std::string name = hint;
  for (int k = 1; ring->index_of(name); ++k) name = hint + std::to_string(k);
  std::vector<std::string> vars = ring->vars();
  if (heavy_front) vars.insert(vars.begin(), name);
  else vars.push_back(name);
  MonomialOrder ord = ring->order();
  if (ord.kind() == MonomialOrder::Kind::Block) {
    auto blocks = ord.blocks();
    if (heavy_front) blocks.insert(blocks.begin(), 1);
    else blocks.push_back(1);
    ord = MonomialOrder::block(blocks);
  }
  return Ring::make(ring->field(), vars, ord);
}

namespace {

std::vector<std::size_t> shift_map(std::size_t n, std::size_t by) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i + by;
  return m;
}

// Eliminates the first variable of `big` (a fresh variable in front of the
// variables of `ring`) and returns the generators in `ring`.
std::vector<Polynomial> drop_front_variable(const std::vector<Polynomial>& gens, const RingPtr& big,
                                            const RingPtr& ring) {
  std::vector<bool> mask(big->nvars(), false);
  mask[0] = true;
  GroebnerBasis gb = eliminate(gens, big, mask);
  std::vector<std::size_t> back(big->nvars(), 0);
  for (std::size_t i = 1; i < big->nvars(); ++i) back[i] = i - 1;
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators()) out.push_back(g.remap(ring, back));
  return out;
}

}  // namespace

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!a.ring()->same_as(*b.ring())) throw InputError("RingMismatch", "intersecting ideals of different rings");
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal::zero(ring);
  RingPtr big = Ring::make(ring->field(), extend_ring(ring, "t", true)->vars());
  auto up = shift_map(ring->nvars(), 1);
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * g.remap(big, up));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.remap(big, up));
  return Ideal(ring, drop_front_variable(gens, big, ring));
}

Ideal quotient(const Ideal& I, const Polynomial& f, unsigned s) {
  Ideal cur = I;
  if (s == 0) return cur;
  if (f.is_zero()) return Ideal::unit(I.ring());
  Ideal principal(I.ring(), {f});
  for (unsigned k = 0; k < s; ++k) {
    Ideal meet = intersect(cur, principal);
    std::vector<Polynomial> gens;
    for (const auto& g : meet.generators()) gens.push_back(exact_divide(g, f));
    cur = Ideal(I.ring(), std::move(gens));
  }
  return cur;
}

Saturation saturate(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw InputError("ZeroPolynomial", "saturation by zero");
  const RingPtr& ring = I.ring();
  if (I.is_zero()) return {Ideal::zero(ring), 0};
  Ideal J(ring, {});
  if (f.is_constant()) {
    J = Ideal::with_basis(I.generators(), I.groebner());
  } else {
    RingPtr big = Ring::make(ring->field(), extend_ring(ring, "y", true)->vars());
    auto up = shift_map(ring->nvars(), 1);
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.remap(big, up));
    gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, 0) * f.remap(big, up));
    J = Ideal(ring, drop_front_variable(gens, big, ring));
  }
  // Least s with g f^s in I for every generator g of J.
  const auto& jg = J.groebner().generators();
  Polynomial power = Polynomial::constant(ring, 1);
  const unsigned cap = default_limits().max_degree;
  for (unsigned s = 0; s <= cap; ++s) {
    bool all = std::all_of(jg.begin(), jg.end(), [&](const Polynomial& g) { return I.contains(g * power); });
    if (all) return {J, s};
    power *= f;
  }
  throw ResourceLimitExceeded("saturation exponent exceeds " + std::to_string(cap));
}

RadicalMembership radical_member(const Polynomial& f, const Ideal& I) {
  if (f.is_zero()) return {true, 1u};
  const RingPtr& ring = I.ring();
  RingPtr big = Ring::make(ring->field(), extend_ring(ring, "y", true)->vars());
  auto up = shift_map(ring->nvars(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(big, up));
  gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, 0) * f.remap(big, up));
  if (!buchberger(gens, big).is_unit()) return {false, std::nullopt};
  // Membership of f^e is monotone in e: double, then bisect.
  unsigned lo = 0, hi = 1;
  const unsigned cap = default_limits().max_degree;
  while (!I.contains(f.pow(hi))) {
    lo = hi;
    hi *= 2;
    if (hi > 4 * cap) throw ResourceLimitExceeded("radical exponent search exceeded its ceiling");
  }
  while (hi - lo > 1) {
    unsigned mid = lo + (hi - lo) / 2;
    if (I.contains(f.pow(mid))) hi = mid;
    else lo = mid;
  }
  return {true, hi};
}

Polynomial head_coefficient_lcm(const Ideal& I, const std::vector<std::size_t>& parameters) {
  const RingPtr& ring = I.ring();
  const std::size_t n = ring->nvars();
  std::vector<bool> is_param(n, false);
  for (auto i : parameters) {
    if (i >= n) throw InputError("BadVariable", "parameter index out of range");
    is_param[i] = true;
  }
  const std::size_t m = static_cast<std::size_t>(std::count(is_param.begin(), is_param.end(), true));
  if (m == 0 || m == n) return Polynomial::constant(ring, 1);
  // Heavy block: the non-parameters, in declaration order; then parameters.
  std::vector<std::string> names;
  std::vector<std::size_t> to_new(n), to_old;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < n; ++i)
      if (is_param[i] == (pass == 1)) {
        to_new[i] = names.size();
        names.push_back(ring->vars()[i]);
        to_old.push_back(i);
      }
  RingPtr work = Ring::make(ring->field(), names, MonomialOrder::block({n - m, m}));
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(work, to_new));
  GroebnerBasis gb = buchberger(gens, work);
  if (gb.is_unit()) throw InputError("UnitIdeal", "contraction of the unit ideal");
  Polynomial f = Polynomial::constant(ring, 1);
  const std::size_t heavy = n - m;
  for (const auto& g : gb.generators()) {
    const Monomial& lm = g.leading_monomial();
    std::vector<Term> hc;
    for (const auto& t : g.terms()) {
      bool same = true;
      for (std::size_t k = 0; k < heavy && same; ++k) same = t.monomial[k] == lm[k];
      if (!same) continue;
      std::vector<std::uint32_t> e(n, 0);
      for (std::size_t k = heavy; k < n; ++k) e[k] = t.monomial[k];
      hc.push_back({Monomial(std::move(e)), t.coeff});
    }
    Polynomial h = Polynomial::from_terms(work, std::move(hc)).remap(ring, to_old);
    f = poly_lcm(f, h);
  }
  return f;
}

Contraction contract(const Ideal& I, const std::vector<std::size_t>& parameters) {
  if (I.is_unit()) throw InputError("UnitIdeal", "contraction of the unit ideal");
  Polynomial f = head_coefficient_lcm(I, parameters);
  Saturation sat = saturate(I, f);
  return {sat.ideal, f, sat.exponent};
}

}  // namespace hopfsmooth
