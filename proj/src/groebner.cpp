#include "hopfsmooth/groebner.hpp"

#include <algorithm>

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

namespace {

thread_local GroebnerRecorder* g_recorder = nullptr;

const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& reducers) {
  for (const Polynomial* g : reducers)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

Polynomial reduce_by(const Polynomial& f, const std::vector<const Polynomial*>& reducers) {
  const Field& field = f.field();
  Polynomial p = f;
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    if (const Polynomial* g = find_reducer(lt.monomial, reducers)) {
      Monomial m = g->leading_monomial().quotient_of(lt.monomial);
      Coeff c = field.div(lt.coeff, g->leading_coeff());
      p = p.sub_mul_term(m, c, *g);
    } else {
      rem.push_back(lt);
      p = p.tail();
    }
  }
  return Polynomial::from_sorted_terms(f.ring(), std::move(rem));
}

void check_ring(const Polynomial& f, const RingPtr& ring) {
  if (!f.ring() || !f.ring()->same_as(*ring)) throw InputError("RingMismatch", "polynomial from a different ring");
}

}  // namespace

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  for (const auto& g : divisors) check_ring(g, f.ring());
  const Field& field = f.field();
  std::vector<std::vector<Term>> q(divisors.size());
  Polynomial p = f;
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const Polynomial& g = divisors[i];
      if (g.is_zero() || !g.leading_monomial().divides(lt.monomial)) continue;
      Monomial m = g.leading_monomial().quotient_of(lt.monomial);
      Coeff c = field.div(lt.coeff, g.leading_coeff());
      q[i].push_back({m, c});
      p = p.sub_mul_term(m, c, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(lt);
      p = p.tail();
    }
  }
  DivisionResult out{{}, Polynomial::from_sorted_terms(f.ring(), std::move(rem))};
  for (auto& terms : q) out.quotients.push_back(Polynomial::from_terms(f.ring(), std::move(terms)));
  return out;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  std::vector<const Polynomial*> reducers;
  for (const auto& g : divisors) {
    check_ring(g, f.ring());
    if (!g.is_zero()) reducers.push_back(&g);
  }
  return reduce_by(f, reducers);
}

SPairData s_pair_data(const Polynomial& gi, const Polynomial& gj) {
  if (gi.is_zero() || gj.is_zero()) throw InputError("ZeroPolynomial", "S-pair of a zero polynomial");
  const Monomial& a = gi.leading_monomial();
  const Monomial& b = gj.leading_monomial();
  Monomial g = a.gcd(b);
  return {{g.quotient_of(a), gi.leading_coeff()}, {g.quotient_of(b), gj.leading_coeff()}};
}

Polynomial s_polynomial(const Polynomial& gi, const Polynomial& gj) {
  SPairData d = s_pair_data(gi, gj);
  return gi.mul_term(d.m_ji.monomial, d.m_ji.coeff).sub_mul_term(d.m_ij.monomial, d.m_ij.coeff, gj);
}

bool is_groebner(const std::vector<Polynomial>& basis) {
  std::vector<const Polynomial*> nz;
  for (const auto& g : basis)
    if (!g.is_zero()) nz.push_back(&g);
  for (std::size_t j = 0; j < nz.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (nz[i]->leading_monomial().coprime(nz[j]->leading_monomial())) continue;
      if (!reduce_by(s_polynomial(*nz[i], *nz[j]), nz).is_zero()) return false;
    }
  return true;
}

GroebnerBasis GroebnerBasis::verify(const RingPtr& ring, std::vector<Polynomial> elements) {
  for (const auto& g : elements) check_ring(g, ring);
  if (!is_groebner(elements)) throw InvariantViolation("NotGroebner", "generators fail Buchberger's criterion");
  return GroebnerBasis(ring, std::move(elements), false);
}

bool GroebnerBasis::is_unit() const {
  for (const auto& g : gens_)
    if (!g.is_zero() && g.leading_monomial().is_one()) return true;
  return false;
}

long GroebnerBasis::max_degree() const {
  long d = -1;
  for (const auto& g : gens_) d = std::max(d, g.total_degree());
  return d;
}

namespace {

struct Pair {
  std::size_t i, j;  // i < j
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, const ResourceLimits& limits) : ring_(ring), limits_(limits) {}

  // Returns false once the unit ideal is detected.
  bool add(Polynomial h) {
    if (h.is_zero()) return true;
    h = h.monic();
    if (h.leading_monomial().is_one()) {
      unit_ = true;
      return false;
    }
    check_limits(h);
    G_.push_back(std::move(h));
    active_.push_back(false);
    update(G_.size() - 1);
    return true;
  }

  bool run() {
    while (!B_.empty()) {
      if (++processed_ > limits_.max_pairs)
        throw ResourceLimitExceeded("Buchberger pair budget exhausted (" + std::to_string(limits_.max_pairs) + ")");
      std::size_t best = 0;
      for (std::size_t k = 1; k < B_.size(); ++k)
        if (pair_less(B_[k], B_[best])) best = k;
      Pair p = B_[best];
      B_.erase(B_.begin() + static_cast<long>(best));
      Polynomial h = reduce_by(s_polynomial(G_[p.i], G_[p.j]), reducers());
      if (!add(std::move(h))) return false;
    }
    return true;
  }

  Polynomial reduce_input(const Polynomial& f) const { return reduce_by(f, reducers()); }

  std::vector<Polynomial> reduced_basis() const {
    if (unit_) return {Polynomial::constant(ring_, 1)};
    std::vector<Polynomial> minimal;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) minimal.push_back(G_[k]);
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<const Polynomial*> others;
      for (std::size_t l = 0; l < minimal.size(); ++l)
        if (l != k) others.push_back(&minimal[l]);
      Polynomial tail = reduce_by(minimal[k].tail(), others);
      Polynomial lead = Polynomial::term(ring_, minimal[k].leading_monomial(), minimal[k].leading_coeff());
      out.push_back((lead + tail).monic());
    }
    const auto& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return out;
  }

 private:
  std::vector<const Polynomial*> reducers() const {
    std::vector<const Polynomial*> r;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) r.push_back(&G_[k]);
    return r;
  }

  bool pair_less(const Pair& a, const Pair& b) const {
    auto c = ring_->order().compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  void check_limits(const Polynomial& h) const {
    if (h.total_degree() > static_cast<long>(limits_.max_degree))
      throw ResourceLimitExceeded("Groebner element of degree " + std::to_string(h.total_degree()) +
                                  " exceeds the degree ceiling " + std::to_string(limits_.max_degree));
    if (h.num_terms() > limits_.max_terms)
      throw ResourceLimitExceeded("Groebner element with " + std::to_string(h.num_terms()) + " terms exceeds the ceiling");
    if (G_.size() + 1 > limits_.max_basis_size)
      throw ResourceLimitExceeded("Groebner basis size exceeds " + std::to_string(limits_.max_basis_size));
  }

  // Gebauer-Moeller installation of the new element G_[h].
  void update(std::size_t h) {
    const Monomial& lh = G_[h].leading_monomial();
    std::vector<Pair> C;
    for (std::size_t k = 0; k < h; ++k)
      if (active_[k]) C.push_back({k, h, G_[k].leading_monomial().lcm(lh)});
    std::vector<bool> keep(C.size(), false);
    for (std::size_t a = 0; a < C.size(); ++a) {
      if (G_[C[a].i].leading_monomial().coprime(lh)) {
        keep[a] = true;
        continue;
      }
      bool dominated = false;
      for (std::size_t b = 0; b < C.size() && !dominated; ++b) {
        if (b == a) continue;
        // Later pairs are still candidates; earlier ones count only if kept.
        if (b < a && !keep[b]) continue;
        if (C[b].lcm.divides(C[a].lcm) && (C[b].lcm != C[a].lcm || b > a)) dominated = true;
      }
      keep[a] = !dominated;
    }
    std::vector<Pair> fresh;
    for (std::size_t a = 0; a < C.size(); ++a)
      if (keep[a] && !G_[C[a].i].leading_monomial().coprime(lh)) fresh.push_back(C[a]);

    std::vector<Pair> kept;
    for (auto& p : B_) {
      bool drop = lh.divides(p.lcm) && G_[p.i].leading_monomial().lcm(lh) != p.lcm &&
                  G_[p.j].leading_monomial().lcm(lh) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    B_ = std::move(kept);
    for (auto& p : fresh) B_.push_back(std::move(p));

    for (std::size_t k = 0; k < h; ++k)
      if (active_[k] && lh.divides(G_[k].leading_monomial())) active_[k] = false;
    active_[h] = true;
  }

  RingPtr ring_;
  const ResourceLimits& limits_;
  std::vector<Polynomial> G_;
  std::vector<bool> active_;
  std::vector<Pair> B_;
  std::size_t processed_ = 0;
  bool unit_ = false;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const RingPtr& ring, const ResourceLimits& limits) {
  std::uint32_t input_degree = 0;
  for (const auto& g : gens) {
    check_ring(g, ring);
    input_degree = std::max<std::uint32_t>(input_degree, static_cast<std::uint32_t>(std::max<long>(g.total_degree(), 0)));
  }
  // Smaller inputs first keeps intermediate growth down; the reduced basis
  // does not depend on this choice.
  std::vector<const Polynomial*> order;
  for (const auto& g : gens)
    if (!g.is_zero()) order.push_back(&g);
  const auto& ord = ring->order();
  std::stable_sort(order.begin(), order.end(), [&](const Polynomial* a, const Polynomial* b) {
    return ord.compare(a->leading_monomial(), b->leading_monomial()) < 0;
  });

  Buchberger bb(ring, limits);
  bool ok = true;
  for (const Polynomial* g : order) {
    if (!bb.add(bb.reduce_input(*g))) {
      ok = false;
      break;
    }
  }
  if (ok) bb.run();
  GroebnerBasis out(ring, bb.reduced_basis(), true);
  if (g_recorder)
    g_recorder->add({input_degree, ring->nvars(), static_cast<std::uint32_t>(std::max<long>(out.max_degree(), 0))});
  return out;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw InputError("EmptyInput", "buchberger needs a ring; pass it explicitly for empty input");
  return buchberger(gens, gens.front().ring());
}

GroebnerBasis reduce_to_d_bounded(const GroebnerBasis& basis, std::size_t d, bool pad) {
  for (const auto& g : basis.generators()) to_bounded(g, d);
  std::vector<Polynomial> elems = basis.generators();
  const Field& field = basis.ring()->field();
  for (std::size_t k = 0; k < elems.size(); ++k) {
    bool changed = true;
    while (changed && !elems[k].is_zero()) {
      changed = false;
      for (std::size_t l = 0; l < k; ++l) {
        if (elems[l].is_zero() || elems[l].leading_monomial() != elems[k].leading_monomial()) continue;
        Coeff lambda = field.div(elems[k].leading_coeff(), elems[l].leading_coeff());
        elems[k] = elems[k] - elems[l].scale(lambda);
        changed = true;
        break;
      }
    }
  }
  std::vector<Polynomial> out;
  for (auto& g : elems)
    if (!g.is_zero()) out.push_back(std::move(g));
  if (out.size() > d) throw InvariantViolation("NotBounded", "more distinct leading monomials than d");
  if (pad)
    while (out.size() < d) out.emplace_back(basis.ring());
  return GroebnerBasis(basis.ring(), std::move(out), false);
}

bool member(const Polynomial& f, const GroebnerBasis& basis) {
  check_ring(f, basis.ring());
  return reduce(f, basis.generators()).is_zero();
}

GroebnerBasis eliminate(const std::vector<Polynomial>& gens, const RingPtr& ring, const std::vector<bool>& eliminated,
                        bool use_lex) {
  const std::size_t n = ring->nvars();
  if (eliminated.size() != n) throw InputError("DimensionMismatch", "elimination mask has wrong length");
  std::vector<std::string> names;
  std::vector<std::size_t> to_new(n), to_old;
  for (std::size_t i = 0; i < n; ++i)
    if (eliminated[i]) {
      to_new[i] = names.size();
      names.push_back(ring->vars()[i]);
      to_old.push_back(i);
    }
  const std::size_t e = names.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!eliminated[i]) {
      to_new[i] = names.size();
      names.push_back(ring->vars()[i]);
      to_old.push_back(i);
    }
  if (e == 0) return buchberger(gens, ring);
  MonomialOrder ord = use_lex ? MonomialOrder::lex()
                              : (e == n ? MonomialOrder::graded_lex() : MonomialOrder::block({e, n - e}));
  RingPtr work = Ring::make(ring->field(), names, ord);
  std::vector<Polynomial> moved;
  for (const auto& g : gens) {
    check_ring(g, ring);
    moved.push_back(g.remap(work, to_new));
  }
  GroebnerBasis gb = buchberger(moved, work);
  std::vector<bool> keep_new(n, false);
  for (std::size_t k = e; k < n; ++k) keep_new[k] = true;
  std::vector<Polynomial> back;
  for (const auto& g : gb.generators())
    if (g.only_uses(keep_new)) back.push_back(g.remap(ring, to_old));
  return buchberger(back, ring);
}

GroebnerBasis eliminate_keep_first(const std::vector<Polynomial>& gens, const RingPtr& ring, std::size_t r,
                                   bool use_lex) {
  const std::size_t n = ring->nvars();
  if (r > n) throw InputError("DimensionMismatch", "cannot keep more variables than the ring has");
  std::vector<bool> mask(n, false);
  for (std::size_t i = r; i < n; ++i) mask[i] = true;
  GroebnerBasis gb = eliminate(gens, ring, mask, use_lex);
  std::vector<std::string> kept(ring->vars().begin(), ring->vars().begin() + static_cast<long>(r));
  RingPtr sub = Ring::make(ring->field(), kept, ring->order().kind() == MonomialOrder::Kind::Lex
                                                    ? MonomialOrder::lex()
                                                    : MonomialOrder::graded_lex());
  std::vector<std::size_t> map(n, 0);
  for (std::size_t i = 0; i < r; ++i) map[i] = i;
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators()) out.push_back(g.remap(sub, map));
  return buchberger(out, sub);
}

namespace {

std::vector<std::uint64_t> leading_supports(const GroebnerBasis& basis) {
  if (basis.ring()->nvars() > 30) throw ResourceLimitExceeded("independent-set search limited to 30 variables");
  std::vector<std::uint64_t> supp;
  for (const auto& g : basis.generators()) {
    if (g.is_zero()) continue;
    std::uint64_t m = 0;
    for (auto i : g.leading_monomial().support()) m |= std::uint64_t{1} << i;
    supp.push_back(m);
  }
  return supp;
}

bool independent(std::uint64_t set, const std::vector<std::uint64_t>& supports) {
  for (auto s : supports)
    if ((s & ~set) == 0) return false;
  return true;
}

}  // namespace

std::vector<std::size_t> max_independent_set(const GroebnerBasis& basis) {
  if (basis.is_unit()) throw InputError("UnitIdeal", "the unit ideal has no independent set");
  const std::size_t n = basis.ring()->nvars();
  auto supports = leading_supports(basis);
  for (std::size_t k = n + 1; k-- > 0;) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t set = 0;
      for (auto i : idx) set |= std::uint64_t{1} << i;
      if (independent(set, supports)) return idx;
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return {};
}

int dimension(const GroebnerBasis& basis) {
  if (basis.is_unit()) return -1;
  return static_cast<int>(max_independent_set(basis).size());
}

DubeBound dube_bound(std::uint32_t d, std::uint32_t n) {
  if (d < 1 || n < 1) throw InputError("BadArgument", "Dube bound needs d >= 1 and n >= 1");
  if (n > 24) throw ResourceLimitExceeded("Dube bound exponent 2^" + std::to_string(n) + " too large to expand");
  unsigned long e_fine = 1ul << (n - 1);
  mpz_class num, den;
  mpz_class base = mpz_class(d) * (d + 2);
  mpz_pow_ui(num.get_mpz_t(), base.get_mpz_t(), e_fine);
  mpz_ui_pow_ui(den.get_mpz_t(), 2, e_fine);
  num *= 2;
  mpz_class fine;
  mpz_cdiv_q(fine.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class coarse;
  mpz_ui_pow_ui(coarse.get_mpz_t(), d, 1ul << n);
  coarse *= 2;
  return {fine, coarse};
}

std::vector<Polynomial> lift(const Polynomial& f, const std::vector<Polynomial>& gens) {
  const RingPtr& ring = f.ring();
  const Field& field = ring->field();
  const std::size_t m = gens.size();
  struct Tracked {
    Polynomial p;
    std::vector<Polynomial> cof;
  };
  std::vector<Tracked> G;
  for (std::size_t k = 0; k < m; ++k) {
    check_ring(gens[k], ring);
    if (gens[k].is_zero()) continue;
    std::vector<Polynomial> cof(m, Polynomial(ring));
    cof[k] = Polynomial::constant(ring, 1);
    G.push_back({gens[k], std::move(cof)});
  }
  auto reduce_tracked = [&](Tracked t) {
    std::vector<Term> rem;
    Polynomial p = t.p;
    while (!p.is_zero()) {
      const Term& lt = p.leading_term();
      const Tracked* g = nullptr;
      for (const auto& cand : G)
        if (cand.p.leading_monomial().divides(lt.monomial)) {
          g = &cand;
          break;
        }
      if (g) {
        Monomial mm = g->p.leading_monomial().quotient_of(lt.monomial);
        Coeff c = field.div(lt.coeff, g->p.leading_coeff());
        for (std::size_t k = 0; k < m; ++k)
          if (!g->cof[k].is_zero()) t.cof[k] = t.cof[k].sub_mul_term(mm, c, g->cof[k]);
        p = p.sub_mul_term(mm, c, g->p);
      } else {
        rem.push_back(lt);
        p = p.tail();
      }
    }
    t.p = Polynomial::from_sorted_terms(ring, std::move(rem));
    return t;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  std::size_t budget = default_limits().max_pairs;
  while (!pairs.empty()) {
    if (budget-- == 0) throw ResourceLimitExceeded("lift pair budget exhausted");
    auto [i, j] = pairs.back();
    pairs.pop_back();
    if (G[i].p.leading_monomial().coprime(G[j].p.leading_monomial())) continue;
    SPairData d = s_pair_data(G[i].p, G[j].p);
    Tracked s{s_polynomial(G[i].p, G[j].p), std::vector<Polynomial>(m, Polynomial(ring))};
    for (std::size_t k = 0; k < m; ++k)
      s.cof[k] = G[i].cof[k].mul_term(d.m_ji.monomial, d.m_ji.coeff) -
                 G[j].cof[k].mul_term(d.m_ij.monomial, d.m_ij.coeff);
    Tracked r = reduce_tracked(std::move(s));
    if (r.p.is_zero()) continue;
    if (r.p.total_degree() > static_cast<long>(default_limits().max_degree))
      throw ResourceLimitExceeded("lift degree ceiling exceeded");
    G.push_back(std::move(r));
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }
  Tracked t{f, std::vector<Polynomial>(m, Polynomial(ring))};
  Tracked r = reduce_tracked(std::move(t));
  if (!r.p.is_zero()) throw InvariantViolation("NotMember", "polynomial is not in the ideal");
  // f - sum cof_k gens_k = 0 after the reduction; cof tracks what was subtracted.
  std::vector<Polynomial> out;
  for (auto& c : r.cof) out.push_back(-c);
  return out;
}

GroebnerRecorder::GroebnerRecorder() : previous_(g_recorder) { g_recorder = this; }
GroebnerRecorder::~GroebnerRecorder() { g_recorder = previous_; }

}  // namespace hopfsmooth
