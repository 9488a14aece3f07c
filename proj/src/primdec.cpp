#include "hopfsmooth/primdec.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/gcd.hpp"

namespace hopfsmooth {

namespace {

constexpr std::size_t kFresh = static_cast<std::size_t>(-1);
constexpr std::size_t kAttempts = 32;
constexpr std::uint64_t kStandardCap = 2'000'000;

// The ring's variables regrouped into blocks (heaviest first), optionally with
// one fresh variable placed where kFresh appears.
struct Layout {
  RingPtr work;
  std::vector<std::size_t> to_new;
  std::vector<std::size_t> to_old;
  std::size_t fresh = kFresh;
};

Layout make_layout(const RingPtr& ring, const std::vector<std::vector<std::size_t>>& blocks) {
  Layout L;
  L.to_new.assign(ring->nvars(), kFresh);
  std::vector<std::string> names;
  std::vector<std::size_t> sizes;
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    for (auto i : block) {
      if (i == kFresh) {
        std::string name = "T";
        for (int k = 1; ring->index_of(name); ++k) name = "T" + std::to_string(k);
        L.fresh = names.size();
        names.push_back(name);
      } else {
        L.to_new[i] = names.size();
        names.push_back(ring->vars()[i]);
      }
      L.to_old.push_back(i);
    }
    sizes.push_back(block.size());
  }
  L.work = Ring::make(ring->field(), names, sizes.size() == 1 ? MonomialOrder::graded_lex() : MonomialOrder::block(sizes));
  return L;
}

GroebnerBasis basis_in(const Ideal& I, const Layout& L, const std::vector<Polynomial>& extra = {}) {
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(L.work, L.to_new));
  for (const auto& g : extra) gens.push_back(g);
  if (gens.empty()) gens.push_back(Polynomial(L.work));
  return buchberger(gens, L.work);
}

Polynomial back(const Polynomial& g, const Layout& L, const RingPtr& ring, const Polynomial* fresh_image = nullptr) {
  std::vector<Polynomial> images;
  for (auto old : L.to_old)
    images.push_back(old == kFresh ? *fresh_image : Polynomial::variable(ring, old));
  return g.substitute(images, ring);
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& parameters) {
  std::vector<bool> is_param(n, false);
  for (auto i : parameters) {
    if (i >= n) throw InputError("BadVariable", "parameter index out of range");
    is_param[i] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_param[i]) rest.push_back(i);
  return rest;
}

bool free_of(const Monomial& m, std::size_t lo, std::size_t hi) {
  for (std::size_t k = lo; k < hi; ++k)
    if (m[k] != 0) return false;
  return true;
}

// Leading monomials restricted to the first `heavy` variables.
std::vector<std::vector<std::uint32_t>> heavy_leads(const GroebnerBasis& gb, std::size_t heavy) {
  std::vector<std::vector<std::uint32_t>> leads;
  for (const auto& g : gb.generators()) {
    const Monomial& lm = g.leading_monomial();
    leads.emplace_back(lm.exponents().begin(), lm.exponents().begin() + static_cast<std::ptrdiff_t>(heavy));
  }
  return leads;
}

// dim over K = k(parameters) of K[X]/(I ⊗ K); nullopt when infinite.
std::optional<std::uint64_t> standard_dimension(const Ideal& I, const std::vector<std::size_t>& X,
                                                const std::vector<std::size_t>& U) {
  Layout L = make_layout(I.ring(), {X, U});
  GroebnerBasis gb = basis_in(I, L);
  const std::size_t h = X.size();
  auto leads = heavy_leads(gb, h);
  for (const auto& e : leads)
    if (std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; })) return 0;
  std::vector<std::uint32_t> bound(h, 0);
  for (std::size_t j = 0; j < h; ++j) {
    for (const auto& e : leads) {
      bool pure = e[j] > 0;
      for (std::size_t k = 0; k < h && pure; ++k) pure = k == j || e[k] == 0;
      if (pure && (bound[j] == 0 || e[j] < bound[j])) bound[j] = e[j];
    }
    if (bound[j] == 0) return std::nullopt;
  }
  std::uint64_t count = 0;
  std::vector<std::uint32_t> cur(h, 0);
  auto divisible = [&] {
    for (const auto& e : leads) {
      bool d = true;
      for (std::size_t k = 0; k < h && d; ++k) d = e[k] <= cur[k];
      if (d) return true;
    }
    return false;
  };
  // Depth-first walk of the box; a divisible prefix cuts the subtree since
  // raising exponents keeps it divisible.
  auto walk = [&](auto&& self, std::size_t j) -> void {
    if (j == h) {
      if (++count > kStandardCap) throw ResourceLimitExceeded("quotient dimension exceeds the enumeration cap");
      return;
    }
    for (std::uint32_t a = 0; a < bound[j]; ++a) {
      cur[j] = a;
      if (divisible()) break;
      self(self, j + 1);
    }
    cur[j] = 0;
  };
  if (h == 0) return 1;
  walk(walk, 0);
  return count;
}

// Least-degree element of (I + extra) ∩ k[U][var] for the layout whose last
// two blocks are {var} and U; `var` is an index in the work ring.
Polynomial lowest_in(const GroebnerBasis& gb, std::size_t heavy, std::size_t var) {
  std::optional<Polynomial> best;
  for (const auto& g : gb.generators()) {
    if (!free_of(g.leading_monomial(), 0, heavy)) continue;
    if (g.degree_in(var) == 0) throw InputError("UnitIdeal", "ideal is the unit ideal over the parameter field");
    if (!best || g.degree_in(var) < best->degree_in(var) ||
        (g.degree_in(var) == best->degree_in(var) && g.to_string() < best->to_string()))
      best = g;
  }
  if (!best) throw InputError("NotZeroDimensional", "ideal is not zero-dimensional over the parameter field");
  return *best;
}

struct LocalFactor {
  Polynomial base;  // irreducible factor evaluated at the element, in S
  unsigned multiplicity;
  long degree;
};

// Factored minimal polynomial over K of the element l modulo I ⊗ K.
std::vector<LocalFactor> minimal_polynomial(const Ideal& I, const Polynomial& l, const std::vector<std::size_t>& X,
                                            const std::vector<std::size_t>& U) {
  Layout L = make_layout(I.ring(), {X, {kFresh}, U});
  Polynomial t = Polynomial::variable(L.work, L.fresh);
  GroebnerBasis gb = basis_in(I, L, {t - l.remap(L.work, L.to_new)});
  Polynomial m = lowest_in(gb, X.size(), L.fresh);
  std::vector<LocalFactor> out;
  for (const auto& f : factor_univariate(m, L.fresh))
    out.push_back({back(f.factor, L, I.ring(), &l), f.multiplicity, f.factor.degree_in(L.fresh)});
  return out;
}

// Deterministic sequence of elements of S tried as generators of the residue
// field: the variables, then random linear forms, then random quadrics.
Polynomial candidate(const RingPtr& ring, const std::vector<std::size_t>& X, std::size_t attempt) {
  if (attempt < X.size()) return Polynomial::variable(ring, X[attempt]);
  std::mt19937_64 rng(0x5eed + attempt);
  const Field& k = ring->field();
  const bool finite = k.is_prime();
  const long span = finite && k.modulus().fits_slong_p() ? std::min<long>(k.modulus().get_si(), 1L << 30)
                                                          : static_cast<long>(3 + attempt);
  auto coeff = [&] { return k.from_int(static_cast<long>(rng() % static_cast<std::uint64_t>(span)) + (finite ? 0 : 1)); };
  Polynomial l(ring);
  for (auto x : X) l += Polynomial::constant(ring, coeff()) * Polynomial::variable(ring, x);
  if (attempt >= X.size() + 8) {
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = a; b < X.size(); ++b)
        l += Polynomial::constant(ring, coeff()) * Polynomial::variable(ring, X[a]) * Polynomial::variable(ring, X[b]);
  }
  if (l.is_constant()) l += Polynomial::variable(ring, X.front());
  return l;
}

bool unit_over(const Ideal& I, const std::vector<std::size_t>& X, const std::vector<std::size_t>& U) {
  if (U.empty()) return I.is_unit();
  Layout L = make_layout(I.ring(), {X, U});
  GroebnerBasis gb = basis_in(I, L);
  for (const auto& g : gb.generators())
    if (free_of(g.leading_monomial(), 0, X.size())) return true;
  return false;
}

// Outcome of examining one zero-dimensional ideal over K.
struct Local {
  enum class Kind { Split, Certified, Unknown } kind;
  std::vector<Ideal> parts;       // Split
  std::optional<Ideal> maximal;   // Certified
};

Local examine(const Ideal& q, const std::vector<std::size_t>& X, const std::vector<std::size_t>& U) {
  const RingPtr& ring = q.ring();
  std::vector<Polynomial> radical_gens;
  for (auto x : X) {
    auto fs = factor_univariate(eliminant(q, x, U), x);
    if (fs.size() >= 2) {
      Local out{Local::Kind::Split, {}, std::nullopt};
      for (const auto& f : fs) out.parts.push_back(q.plus({f.factor.pow(f.multiplicity)}));
      return out;
    }
    radical_gens.push_back(fs.front().factor);
  }
  Ideal R = q.plus(radical_gens);
  auto dim = standard_dimension(R, X, U);
  if (!dim) throw InvariantViolation("NotZeroDimensional", "radical candidate lost zero-dimensionality");
  if (*dim == 1 || X.empty()) return {Local::Kind::Certified, {}, R};
  for (std::size_t attempt = 0; attempt < kAttempts; ++attempt) {
    Polynomial l = candidate(ring, X, attempt);
    auto mr = minimal_polynomial(R, l, X, U);
    if (mr.size() == 1 && mr.front().multiplicity == 1 && static_cast<std::uint64_t>(mr.front().degree) == *dim)
      return {Local::Kind::Certified, {}, R};
    if (mr.size() >= 2) {
      Local out{Local::Kind::Split, {}, std::nullopt};
      for (const auto& f : minimal_polynomial(q, l, X, U)) out.parts.push_back(q.plus({f.base.pow(f.multiplicity)}));
      return out;
    }
  }
  return {Local::Kind::Unknown, {}, std::nullopt};
}

Ideal contracted(const Ideal& I, const std::vector<std::size_t>& U) {
  if (U.empty()) return I;
  return contract(I, U).ideal;
}

std::vector<PrimaryComponent> decompose(const Ideal& I) {
  if (I.is_unit()) return {};
  if (I.is_zero()) return {{I, I, true}};
  auto U = max_independent_set(I.groebner());
  auto comps = primdec_zero_dim(I, U);
  if (!U.empty()) {
    Polynomial f = head_coefficient_lcm(I, U);
    Saturation sat = saturate(I, f);
    if (sat.exponent > 0) {
      auto rest = decompose(I.plus({f.pow(sat.exponent)}));
      comps.insert(comps.end(), rest.begin(), rest.end());
    }
  }
  return comps;
}

bool radical_contains(const Ideal& big, const Ideal& small) {
  for (const auto& g : small.groebner().generators())
    if (!radical_member(g, big).member) return false;
  return true;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

bool unit_over_fraction_field(const Ideal& I, const std::vector<std::size_t>& parameters) {
  return unit_over(I, complement(I.ring()->nvars(), parameters), parameters);
}

Polynomial eliminant(const Ideal& I, std::size_t var, const std::vector<std::size_t>& parameters) {
  const RingPtr& ring = I.ring();
  if (var >= ring->nvars()) throw InputError("BadVariable", "variable index out of range");
  if (std::find(parameters.begin(), parameters.end(), var) != parameters.end())
    throw InputError("BadVariable", "eliminant variable is a parameter");
  auto X = complement(ring->nvars(), parameters);
  std::vector<std::size_t> others;
  for (auto x : X)
    if (x != var) others.push_back(x);
  Layout L = make_layout(ring, {others, {var}, parameters});
  GroebnerBasis gb = basis_in(I, L);
  return back(lowest_in(gb, others.size(), L.to_new[var]), L, ring);
}

std::vector<PrimaryComponent> primdec_zero_dim(const Ideal& I, const std::vector<std::size_t>& parameters) {
  const RingPtr& ring = I.ring();
  auto X = complement(ring->nvars(), parameters);
  if (unit_over(I, X, parameters)) return {};
  if (!standard_dimension(I, X, parameters))
    throw InputError("NotZeroDimensional", "ideal is not zero-dimensional over the parameter field");
  std::vector<PrimaryComponent> out;
  std::vector<Ideal> work{I};
  while (!work.empty()) {
    Ideal q = std::move(work.back());
    work.pop_back();
    if (unit_over(q, X, parameters)) continue;
    Local loc = examine(q, X, parameters);
    switch (loc.kind) {
      case Local::Kind::Split:
        for (auto& p : loc.parts) work.push_back(std::move(p));
        break;
      case Local::Kind::Certified:
        out.push_back({contracted(q, parameters), contracted(*loc.maximal, parameters), true});
        break;
      case Local::Kind::Unknown:
        out.push_back({contracted(q, parameters), std::nullopt, true});
        break;
    }
  }
  return out;
}

std::vector<PrimaryComponent> primdec(const Ideal& I) {
  if (I.is_unit()) throw InputError("UnitIdeal", "primary decomposition of the unit ideal");
  std::map<std::vector<std::string>, PrimaryComponent> unique;
  for (auto& c : decompose(I)) {
    Ideal canon = c.ideal.canonical();
    unique.emplace(canon.fingerprint(), PrimaryComponent{canon, c.witness, true});
  }
  std::vector<PrimaryComponent> comps;
  for (auto& [key, c] : unique) comps.push_back(std::move(c));

  // Components sharing a radical intersect to a primary ideal.
  std::vector<PrimaryComponent> merged;
  for (auto& c : comps) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const PrimaryComponent& m) {
      return radical_contains(m.ideal, c.ideal) && radical_contains(c.ideal, m.ideal);
    });
    if (it == merged.end()) {
      merged.push_back(std::move(c));
    } else {
      it->ideal = intersect(it->ideal, c.ideal).canonical();
      if (!it->witness) it->witness = c.witness;
    }
  }

  // Drop components containing the intersection of the others.
  std::vector<bool> keep(merged.size(), true);
  for (std::size_t k = 0; k < merged.size(); ++k) {
    std::optional<Ideal> rest;
    for (std::size_t j = 0; j < merged.size(); ++j) {
      if (j == k || !keep[j]) continue;
      rest = rest ? intersect(*rest, merged[j].ideal) : merged[j].ideal;
    }
    if (rest && merged[k].ideal.contains(*rest)) keep[k] = false;
  }
  std::vector<PrimaryComponent> result;
  for (std::size_t k = 0; k < merged.size(); ++k)
    if (keep[k]) result.push_back(std::move(merged[k]));
  std::sort(result.begin(), result.end(), [](const PrimaryComponent& a, const PrimaryComponent& b) {
    return a.ideal.fingerprint() < b.ideal.fingerprint();
  });
  return classify_isolated(std::move(result));
}

Verdict is_primary(const Ideal& Q) {
  if (Q.is_unit()) throw InputError("UnitIdeal", "the unit ideal is not proper");
  if (Q.is_zero()) return Verdict::True;
  auto U = max_independent_set(Q.groebner());
  auto X = complement(Q.ring()->nvars(), U);
  if (!U.empty()) {
    // A primary ideal is saturated with respect to anything outside its radical.
    Polynomial f = head_coefficient_lcm(Q, U);
    if (saturate(Q, f).exponent > 0) return Verdict::False;
  }
  Local loc = examine(Q, X, U);
  switch (loc.kind) {
    case Local::Kind::Split: {
      std::size_t live = 0;
      for (const auto& p : loc.parts)
        if (!unit_over(p, X, U)) ++live;
      if (live >= 2) return Verdict::False;
      // Only reachable when a factor is a unit over K; treat as undecided.
      return Verdict::Unknown;
    }
    case Local::Kind::Certified: return Verdict::True;
    case Local::Kind::Unknown: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

std::vector<PrimaryComponent> classify_isolated(std::vector<PrimaryComponent> components) {
  const std::size_t n = components.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool embedded = false;
    for (std::size_t j = 0; j < n && !embedded; ++j) {
      if (i == j) continue;
      // sqrt(C_j) strictly inside sqrt(C_i) makes C_i embedded.
      embedded = radical_contains(components[i].ideal, components[j].ideal) &&
                 !radical_contains(components[j].ideal, components[i].ideal);
    }
    components[i].isolated = !embedded;
  }
  return components;
}

}  // namespace hopfsmooth
