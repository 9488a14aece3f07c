#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gen.hpp"
#include "hopfsmooth/fol.hpp"
#include "hopfsmooth/hopf.hpp"

// Random d-bounded instances checked against the direct algorithms. Shared by
// the unit tests and the acceptance binary.
namespace agreement {

using namespace hopfsmooth;

struct Tally {
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::size_t positives = 0;  // instances where the direct algorithm said yes
  std::vector<std::string> notes;

  void record(bool formula, bool direct, const std::string& what) {
    ++instances;
    positives += direct ? 1 : 0;
    if (formula != direct) {
      ++disagreements;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
};

inline std::uint64_t max_rank(const Polynomial& f) {
  std::uint64_t r = 0;
  for (const auto& t : f.terms()) r = std::max(r, monomial_rank(t.monomial));
  return r;
}

inline std::string show(const std::vector<Polynomial>& B) {
  std::string s = "[";
  for (std::size_t i = 0; i < B.size(); ++i) s += (i ? ", " : "") + B[i].to_string();
  return s + "]";
}

inline std::vector<Polynomial> nonzero(const std::vector<Polynomial>& B) {
  std::vector<Polynomial> out;
  for (const auto& g : B)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

inline Ideal ideal_of(const RingPtr& R, const std::vector<Polynomial>& B) {
  auto gens = nonzero(B);
  return gens.empty() ? Ideal::zero(R) : Ideal(R, gens);
}

inline RingPtr random_ring(std::mt19937_64& rng, const Field& k) {
  std::bernoulli_distribution two(0.5);
  return two(rng) ? Ring::make(k, {"x", "y"}) : Ring::make(k, {"x"});
}

inline std::size_t random_d(std::mt19937_64& rng) { return std::uniform_int_distribution<std::size_t>(1, 6)(rng); }

// A d-bounded Gröbner basis of length d: monomial lists, or scaled and
// shuffled reduced bases of small random ideals, padded with zeros.
inline std::optional<std::vector<Polynomial>> groebner_instance(std::mt19937_64& rng, const RingPtr& R, std::size_t d) {
  std::vector<Polynomial> B;
  std::bernoulli_distribution coin(0.3);
  if (coin(rng)) {
    std::uniform_int_distribution<std::size_t> rank(1, d);
    for (std::size_t i = 0; i < d; ++i)
      if (!coin(rng)) B.push_back(Polynomial::term(R, monomial_unrank(rank(rng), R->nvars()), R->field().from_int(2)));
  } else {
    std::vector<Polynomial> gens;
    for (int k = std::uniform_int_distribution<int>(1, 2)(rng); k > 0; --k) gens.push_back(testgen::random_bounded(rng, R, d));
    Ideal I = ideal_of(R, gens);
    for (const auto& g : I.groebner().generators()) {
      Coeff c;
      do c = testgen::random_coeff(rng, R->field(), 3);
      while (c == 0);
      B.push_back(g.scale(c));
    }
  }
  if (B.size() > d) return std::nullopt;
  for (const auto& g : B)
    if (max_rank(g) > d) return std::nullopt;
  while (B.size() < d) B.push_back(Polynomial(R));
  std::shuffle(B.begin(), B.end(), rng);
  return B;
}

inline std::vector<Polynomial> random_list(std::mt19937_64& rng, const RingPtr& R, std::size_t d) {
  std::vector<Polynomial> B;
  for (std::size_t i = 0; i < d; ++i) {
    Polynomial g = testgen::random_bounded(rng, R, d);
    // Constants make the list a basis of the unit ideal; keep them rare.
    if (max_rank(g) == 1 && d > 1 && std::bernoulli_distribution(0.8)(rng)) g = Polynomial(R);
    B.push_back(g);
  }
  return B;
}

template <class Key>
const fol::Formula& cached(std::map<Key, fol::Formula>& cache, const Key& key, const std::function<fol::Formula()>& make) {
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make()).first;
  return it->second;
}

inline bool holds(const fol::Formula& F, const RingPtr& R, const std::vector<Polynomial>& B,
                  const std::optional<Polynomial>& f = std::nullopt) {
  fol::Instance data{R, B, f, {}, {}, {}, {}};
  return fol::evaluate(F, fol::assign(F, data));
}

inline Tally beta(std::mt19937_64& rng, const Field& k, std::size_t count) {
  Tally t;
  std::map<std::pair<std::size_t, std::size_t>, fol::Formula> cache;
  std::bernoulli_distribution coin(0.5);
  while (t.instances < count) {
    RingPtr R = random_ring(rng, k);
    std::size_t d = random_d(rng);
    std::optional<std::vector<Polynomial>> B = coin(rng) ? groebner_instance(rng, R, d) : random_list(rng, R, d);
    if (!B) continue;
    const auto& F = cached<std::pair<std::size_t, std::size_t>>(cache, {d, R->nvars()}, [&] { return fol::beta(d, R->nvars()); });
    t.record(holds(F, R, *B), is_groebner(*B), "beta " + show(*B));
  }
  return t;
}

inline Tally iota(std::mt19937_64& rng, const Field& k, std::size_t count) {
  Tally t;
  std::map<std::pair<std::size_t, std::size_t>, fol::Formula> cache;
  std::bernoulli_distribution coin(0.5);
  while (t.instances < count) {
    RingPtr R = random_ring(rng, k);
    std::size_t d = random_d(rng);
    auto B = groebner_instance(rng, R, d);
    if (!B) continue;
    Polynomial f = testgen::random_bounded(rng, R, d);
    if (coin(rng)) {
      // A combination of basis elements and monomial multiples that stays d-bounded.
      Polynomial g(R);
      for (const auto& b : *B) {
        Polynomial m = Polynomial::term(R, testgen::random_monomial(rng, R->nvars(), 1), testgen::random_coeff(rng, k, 3));
        if (max_rank(b * m) <= d) g += b * m;
      }
      f = g;
    }
    const auto& F = cached<std::pair<std::size_t, std::size_t>>(cache, {d, R->nvars()}, [&] { return fol::iota(d, R->nvars()); });
    t.record(holds(F, R, *B, f), ideal_of(R, *B).contains(f), "iota " + show(*B) + " f=" + f.to_string());
  }
  return t;
}

inline Tally delta(std::mt19937_64& rng, const Field& k, std::size_t count) {
  Tally t;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, fol::Formula> cache;
  while (t.instances < count) {
    RingPtr R = random_ring(rng, k);
    const std::size_t n = R->nvars();
    std::size_t d = random_d(rng);
    auto B = groebner_instance(rng, R, d);
    if (!B) continue;
    int dim = nonzero(*B).empty() ? static_cast<int>(n) : ideal_of(R, *B).dimension();
    for (std::size_t e = 0; e <= std::max(d, n) && t.instances < count; ++e) {
      const auto& F = cached<std::tuple<std::size_t, std::size_t, std::size_t>>(cache, {e, d, n},
                                                                             [&] { return fol::delta(e, d, n); });
      t.record(holds(F, R, *B), dim == static_cast<int>(e), "delta(" + std::to_string(e) + ") " + show(*B));
    }
  }
  return t;
}

inline Tally phi(std::mt19937_64& rng, const Field& k, std::size_t count) {
  Tally t;
  while (t.instances < count) {
    RingPtr R = random_ring(rng, k);
    const std::size_t n = R->nvars();
    std::size_t d = random_d(rng);
    Polynomial f = testgen::random_bounded(rng, R, d);
    for (std::size_t e = 0; e <= d && t.instances < count; ++e) {
      auto F = fol::phi(e, d, n);
      bool direct = e == 0 ? f.is_zero() : !f.is_zero() && monomial_rank(f.leading_monomial()) == e;
      fol::Instance data{R, {}, f, {}, {}, {}, {}};
      t.record(fol::evaluate(F, fol::assign(F, data)), direct, "phi(" + std::to_string(e) + ") f=" + f.to_string());
    }
  }
  return t;
}

// ---- valid Hopf quadruples in one or two variables

inline HopfQuadruple quad(const Field& k, std::vector<std::string> vars, const std::vector<std::string>& rels,
                          const std::vector<std::string>& comul, const std::vector<std::string>& anti,
                          const std::vector<long>& counit) {
  RingPtr S = Ring::make(k, std::move(vars));
  RingPtr T = tensor_ring(S, 2);
  std::vector<Polynomial> r, c, a;
  std::vector<Coeff> e;
  for (const auto& s : rels) r.push_back(parse_poly(s, S));
  for (const auto& s : comul) c.push_back(parse_poly(s, T));
  for (const auto& s : anti) a.push_back(parse_poly(s, S));
  for (long v : counit) e.push_back(k.from_int(v));
  return HopfQuadruple(S, r, c, a, e);
}

// x -> x + c on every variable.
inline HopfQuadruple shift(const HopfQuadruple& H, const std::vector<Coeff>& c) {
  const RingPtr& S = H.ring();
  const Field& k = S->field();
  const std::size_t n = S->nvars();
  RingPtr T = tensor_ring(S, 2);
  std::vector<Polynomial> xs, ts;
  for (std::size_t l = 0; l < n; ++l) xs.push_back(Polynomial::variable(S, l) + Polynomial::constant(S, c[l]));
  for (std::size_t l = 0; l < 2 * n; ++l) ts.push_back(Polynomial::variable(T, l) + Polynomial::constant(T, c[l % n]));
  std::vector<Polynomial> r, cm, a;
  std::vector<Coeff> e;
  for (const auto& f : H.relations()) r.push_back(f.substitute(xs, S));
  for (std::size_t l = 0; l < n; ++l) {
    cm.push_back(H.comul()[l].substitute(ts, T) - Polynomial::constant(T, c[l]));
    a.push_back(H.antipode()[l].substitute(xs, S) - Polynomial::constant(S, c[l]));
    e.push_back(k.sub(H.counit()[l], c[l]));
  }
  return HopfQuadruple(S, r, cm, a, e);
}

inline HopfQuadruple one_variable(std::mt19937_64& rng, const Field& k, bool small) {
  std::vector<HopfQuadruple> options{quad(k, {"x"}, {}, {"x' + x''"}, {"-x"}, {0}),
                                     quad(k, {"x"}, {"x - 1"}, {"x'*x''"}, {"1"}, {1}),
                                     quad(k, {"x"}, {"x^2 - 1"}, {"x'*x''"}, {"x"}, {1})};
  if (!small) {
    for (unsigned m = 3; m <= 5; ++m) options.push_back(catalog::roots_of_unity(k, m));
    if (k.is_prime() && k.modulus() <= 5) options.push_back(catalog::alpha(k.modulus()));
  }
  return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
}

inline HopfQuadruple random_quadruple(std::mt19937_64& rng, const Field& k) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<long> shift_by(-2, 2);
  HopfQuadruple H = one_variable(rng, k, false);
  if (coin(rng)) {
    if (coin(rng)) {
      H = catalog::multiplicative(k);
    } else {
      HopfQuadruple A = one_variable(rng, k, true), B = one_variable(rng, k, true);
      auto rx = [](const std::string& s) { return s; };
      auto ry = [](std::string s) {
        for (auto& ch : s)
          if (ch == 'x') ch = 'y';
        return s;
      };
      auto strs = [](const std::vector<Polynomial>& ps) {
        std::vector<std::string> out;
        for (const auto& p : ps) out.push_back(p.to_string());
        return out;
      };
      std::vector<std::string> rels;
      for (auto s : strs(A.relations())) rels.push_back(rx(s));
      for (auto s : strs(B.relations())) rels.push_back(ry(s));
      std::vector<long> e{A.counit()[0].get_num().get_si(), B.counit()[0].get_num().get_si()};
      H = quad(k, {"x", "y"}, rels, {strs(A.comul())[0], ry(strs(B.comul())[0])},
               {strs(A.antipode())[0], ry(strs(B.antipode())[0])}, e);
    }
  }
  if (coin(rng)) {
    std::vector<Coeff> c;
    for (std::size_t l = 0; l < H.ring()->nvars(); ++l) c.push_back(k.from_int(shift_by(rng)));
    H = shift(H, c);
  }
  return H;
}

struct Smoothness {
  Tally tau;
  Tally theta;
  std::size_t invalid = 0;  // generated quadruples failing the axioms (expected 0)
};

inline Smoothness tau_theta(std::mt19937_64& rng, const Field& k, std::size_t count) {
  Smoothness s;
  while (s.theta.instances < count) {
    HopfQuadruple H = random_quadruple(rng, k);
    if (!H.is_hopf()) {
      ++s.invalid;
      continue;
    }
    const RingPtr& R = H.ring();
    const std::size_t n = R->nvars();
    std::vector<Polynomial> B = H.ideal().groebner().generators();
    std::size_t d = std::max<std::size_t>(B.size(), 1);
    for (const auto& g : B) d = std::max<std::size_t>(d, max_rank(g));
    if (d > 6) continue;
    const int lie = lie_dimension(H);
    const auto rep = is_smooth(H);
    for (std::size_t e = 0; e <= d; ++e)
      s.tau.record(holds(fol::tau(e, d, n, H.counit()), R, B), lie == static_cast<int>(e),
                   "tau(" + std::to_string(e) + ") " + show(B));
    s.theta.record(holds(fol::theta(d, n, H.counit()), R, B), rep.smooth, "theta " + show(B));
  }
  return s;
}

}  // namespace agreement
