#include <algorithm>
#include <random>

#include "../support/gen.hpp"
#include "../support/oracles.hpp"
#include "doctest.h"
#include "hopfsmooth/error.hpp"
#include "hopfsmooth/groebner.hpp"

using namespace hopfsmooth;

namespace {

RingPtr qring(std::vector<std::string> vars) { return Ring::make(Field::rationals(), std::move(vars)); }
Polynomial P(const RingPtr& r, const char* s) { return parse_poly(s, r); }
std::vector<Polynomial> Ps(const RingPtr& r, std::initializer_list<const char*> xs) {
  std::vector<Polynomial> out;
  for (auto s : xs) out.push_back(P(r, s));
  return out;
}
std::vector<std::string> strs(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (auto& g : gb.generators()) out.push_back(g.to_string());
  return out;
}

}  // namespace

TEST_CASE("division") {
  auto R = qring({"x", "y"});
  auto d1 = divide(P(R, "x^2 + x"), Ps(R, {"x"}));
  CHECK(d1.quotients[0] == P(R, "x + 1"));
  CHECK(d1.remainder.is_zero());
  auto d2 = divide(P(R, "x"), Ps(R, {"x^2"}));
  CHECK(d2.quotients[0].is_zero());
  CHECK(d2.remainder == P(R, "x"));
  auto divisors = Ps(R, {"x*y - 1", "y"});
  Polynomial f = P(R, "x^2*y + 1");
  auto d3 = divide(f, divisors);
  CHECK(d3.remainder == P(R, "x + 1"));
  CHECK(d3.quotients[0] == P(R, "x"));
  CHECK(d3.quotients[1].is_zero());
  CHECK(d3.quotients[0] * divisors[0] + d3.quotients[1] * divisors[1] + d3.remainder == f);
  CHECK_THROWS_AS(divide(f, Ps(qring({"x"}), {"x"})), InputError);
}

TEST_CASE("division invariants on random input") {
  std::mt19937_64 rng(1);
  auto R = Ring::make(Field::prime(5), {"x", "y", "z"});
  for (int it = 0; it < 200; ++it) {
    Polynomial f = testgen::random_poly(rng, R, 4, 6);
    std::vector<Polynomial> gs;
    for (int k = 0; k < 3; ++k) gs.push_back(testgen::random_poly(rng, R, 3, 3));
    auto d = divide(f, gs);
    Polynomial sum = d.remainder;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      sum += d.quotients[i] * gs[i];
      if (!d.quotients[i].is_zero() && !f.is_zero())
        CHECK(R->order().compare((d.quotients[i] * gs[i]).leading_monomial(), f.leading_monomial()) <= 0);
    }
    CHECK(sum == f);
    for (const auto& t : d.remainder.terms())
      for (const auto& g : gs) CHECK(!(!g.is_zero() && g.leading_monomial().divides(t.monomial)));
  }
}

TEST_CASE("S-pair data") {
  auto R = qring({"x", "y"});
  auto d = s_pair_data(P(R, "x^2"), P(R, "x*y"));
  CHECK(d.m_ij.monomial == Monomial({1, 0}));
  CHECK(d.m_ji.monomial == Monomial({0, 1}));
  Polynomial g = P(R, "x^2 + y");
  CHECK(s_polynomial(g, g).is_zero());
  CHECK(P(R, "x").leading_monomial().coprime(P(R, "y").leading_monomial()));
  CHECK_THROWS_AS(s_pair_data(Polynomial(R), g), InputError);
  // Leading terms cancel even with non-monic inputs.
  Polynomial s = s_polynomial(P(R, "2*x^2 + y"), P(R, "3*x*y + 1"));
  CHECK(R->order().compare(s.leading_monomial(), Monomial({2, 1})) < 0);
}

TEST_CASE("Buchberger's criterion") {
  auto R = qring({"x", "y"});
  CHECK(is_groebner(Ps(R, {"x"})));
  CHECK_FALSE(is_groebner(Ps(R, {"x + y", "x"})));
  CHECK(is_groebner({}));
  CHECK(is_groebner({Polynomial(R), Polynomial(R)}));
}

TEST_CASE("buchberger examples") {
  auto R = qring({"x", "y"});
  CHECK(strs(buchberger(Ps(R, {"x"}))) == std::vector<std::string>{"x"});
  auto gb = buchberger(Ps(R, {"x^2 + y^2", "x*y"}));
  CHECK(strs(gb) == std::vector<std::string>{"x*y", "x^2 + y^2", "y^3"});
  CHECK(is_groebner(gb.generators()));
  CHECK(P(R, "y*(x^2 + y^2) - x*(x*y)") == P(R, "y^3"));
  CHECK(strs(buchberger(Ps(R, {"x", "x + 1"}))) == std::vector<std::string>{"1"});
  CHECK(gb.reduced());
  CHECK(buchberger({}, R).generators().empty());
}

TEST_CASE("buchberger soundness and uniqueness on random ideals") {
  std::mt19937_64 rng(42);
  int done = 0;
  for (int it = 0; done < 120; ++it) {
    Field field = it % 2 ? Field::prime(5) : Field::rationals();
    std::size_t n = 1 + static_cast<std::size_t>(rng() % 3);
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    auto R = Ring::make(field, names);
    std::vector<Polynomial> gens;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) gens.push_back(testgen::random_nonzero(rng, R, 3, 3));
    GroebnerBasis gb = buchberger(gens, R);
    CHECK(is_groebner(gb.generators()));
    for (const auto& g : gens) CHECK(member(g, gb));
    // Each output element reduces to zero modulo the input ideal's basis of a
    // permuted run, and the reduced bases agree element-wise.
    std::vector<Polynomial> perm = gens;
    std::shuffle(perm.begin(), perm.end(), rng);
    perm.push_back(gens.front() * testgen::random_poly(rng, R, 1, 2));
    GroebnerBasis gb2 = buchberger(perm, R);
    CHECK(gb == gb2);
    // Reducedness.
    for (std::size_t a = 0; a < gb.generators().size(); ++a) {
      const auto& g = gb.generators()[a];
      CHECK(g.leading_coeff() == 1);
      for (std::size_t b = 0; b < gb.generators().size(); ++b) {
        if (a == b) continue;
        for (const auto& t : g.terms()) CHECK_FALSE(gb.generators()[b].leading_monomial().divides(t.monomial));
      }
    }
    ++done;
  }
}

TEST_CASE("resource limits are explicit") {
  auto R = qring({"x", "y", "z"});
  ResourceLimits tight;
  tight.max_degree = 3;
  CHECK_THROWS_AS(buchberger(Ps(R, {"x^3 - y*z", "y^3 - x*z^2 + 1", "z^3 - x^2"}), R, tight), ResourceLimitExceeded);
}

TEST_CASE("reduce to d-bounded") {
  auto R = qring({"x"});
  auto gb = GroebnerBasis::verify(R, Ps(R, {"x", "2*x"}));
  auto b = reduce_to_d_bounded(gb, 2, true);
  CHECK(b.generators().size() == 2);
  CHECK(b.generators()[0] == P(R, "x"));
  CHECK(b.generators()[1].is_zero());
  auto b3 = reduce_to_d_bounded(GroebnerBasis::verify(R, Ps(R, {"x", "x", "x"})), 3, true);
  CHECK(b3.generators()[0] == P(R, "x"));
  CHECK(b3.generators()[1].is_zero());
  CHECK(b3.generators()[2].is_zero());
  CHECK(is_groebner(b3.generators()));
  auto same = reduce_to_d_bounded(GroebnerBasis::verify(R, Ps(R, {"x"})), 2, false);
  CHECK(same.generators().size() == 1);
  CHECK_THROWS_AS(reduce_to_d_bounded(GroebnerBasis::verify(R, Ps(R, {"x^3"})), 3), InputError);
}

TEST_CASE("membership") {
  auto R = qring({"x", "y"});
  auto gxy = buchberger(Ps(R, {"x", "y"}));
  CHECK(member(Polynomial(R), gxy));
  CHECK(member(P(R, "x + y"), gxy));
  auto gx2 = buchberger(Ps(R, {"x^2"}));
  CHECK_FALSE(member(P(R, "x"), gx2));
  CHECK_FALSE(oracle::member_at_degree(P(R, "x"), Ps(R, {"x^2"}), 6));
  CHECK_THROWS_AS(GroebnerBasis::verify(R, Ps(R, {"x + y", "x"})), InvariantViolation);
}

TEST_CASE("lift gives certificates") {
  std::mt19937_64 rng(9);
  auto R = Ring::make(Field::prime(7), {"x", "y"});
  for (int it = 0; it < 30; ++it) {
    std::vector<Polynomial> gens{testgen::random_nonzero(rng, R, 2, 3), testgen::random_nonzero(rng, R, 2, 3)};
    Polynomial f = gens[0] * testgen::random_poly(rng, R, 2, 2) + gens[1] * testgen::random_poly(rng, R, 2, 2);
    auto q = lift(f, gens);
    CHECK(q[0] * gens[0] + q[1] * gens[1] == f);
  }
  CHECK_THROWS_AS(lift(P(qring({"x"}), "x"), Ps(qring({"x"}), {"x^2"})), InvariantViolation);
}

TEST_CASE("elimination") {
  auto R = qring({"x", "y"});
  auto e1 = eliminate_keep_first(Ps(R, {"y - x^2"}), R, 1);
  CHECK(e1.generators().empty());
  for (std::uint32_t d = 0; d <= 6; ++d)
    CHECK_FALSE(oracle::member_at_degree(P(R, "x").pow(d) + P(R, "1"), Ps(R, {"y - x^2"}), 8));
  // Keep y: variables reordered so y is first.
  auto Ryx = qring({"y", "x"});
  auto e2 = eliminate_keep_first(Ps(Ryx, {"x - 1", "y - x"}), Ryx, 1);
  CHECK(strs(e2) == std::vector<std::string>{"y - 1"});
  auto e3 = eliminate_keep_first(Ps(R, {"x^2 + y^2", "x*y"}), R, 2);
  CHECK(e3 == buchberger(Ps(R, {"x^2 + y^2", "x*y"})));
  auto e4 = eliminate(Ps(R, {"x - 1", "y - x"}), R, {true, false}, true);
  CHECK(strs(e4) == std::vector<std::string>{"y - 1"});

  std::mt19937_64 rng(13);
  auto S = Ring::make(Field::prime(5), {"x", "y", "z"});
  for (int it = 0; it < 30; ++it) {
    std::vector<Polynomial> gens{testgen::random_nonzero(rng, S, 2, 3), testgen::random_nonzero(rng, S, 2, 3)};
    auto e = eliminate(gens, S, {true, false, false});
    auto full = buchberger(gens, S);
    for (const auto& g : e.generators()) {
      CHECK(g.degree_in(0) <= 0);
      CHECK(member(g, full));
    }
  }
}

TEST_CASE("dimension") {
  auto R3 = qring({"x", "y", "z"});
  CHECK(dimension(buchberger({}, R3)) == 3);
  CHECK(dimension(buchberger(Ps(R3, {"x", "y", "z"}))) == 0);
  CHECK(dimension(buchberger(Ps(R3, {"x", "x - 1"}))) == -1);
  auto R2 = qring({"x", "y"});
  auto gxy = buchberger(Ps(R2, {"x*y"}));
  CHECK(dimension(gxy) == 1);
  CHECK(oracle::monomial_ideal_dimension({Monomial({1, 1})}, 2) == 1);
  CHECK(max_independent_set(gxy) == std::vector<std::size_t>{0});
  auto sl2 = buchberger(Ps(qring({"a", "b", "c", "d"}), {"a*d - b*c - 1"}));
  CHECK(dimension(sl2) == 3);
  std::vector<Monomial> lms;
  for (auto& g : sl2.generators()) lms.push_back(g.leading_monomial());
  CHECK(oracle::monomial_ideal_dimension(lms, 4, 16) == 3);
  CHECK_THROWS_AS(max_independent_set(buchberger(Ps(R2, {"1"}))), InputError);
}

TEST_CASE("dimension equals dimension of the initial ideal") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 60; ++it) {
    auto R = Ring::make(Field::prime(5), {"x", "y", "z"});
    std::vector<Polynomial> gens;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) gens.push_back(testgen::random_nonzero(rng, R, 2, 3));
    auto gb = buchberger(gens, R);
    std::vector<Polynomial> initial;
    std::vector<Monomial> lms;
    for (auto& g : gb.generators()) {
      initial.push_back(Polynomial::term(R, g.leading_monomial(), 1));
      lms.push_back(g.leading_monomial());
    }
    CHECK(dimension(gb) == dimension(buchberger(initial, R)));
    CHECK(dimension(gb) == oracle::monomial_ideal_dimension(lms, 3));
  }
}

TEST_CASE("Dube bound") {
  auto b = dube_bound(2, 2);
  CHECK(b.fine == 32);
  CHECK(b.coarse == 32);
  auto b1 = dube_bound(1, 1);
  CHECK(b1.fine == 3);
  CHECK(b1.coarse == 2);
  CHECK(dube_bound(3, 2).fine == 113);  // ceil(2 * 7.5^2)
  CHECK_THROWS_AS(dube_bound(0, 2), InputError);
}

TEST_CASE("recorder sees every run") {
  auto R = qring({"x", "y"});
  GroebnerRecorder outer;
  {
    GroebnerRecorder inner;
    buchberger(Ps(R, {"x^2 + y^2", "x*y"}));
    REQUIRE(inner.records().size() == 1);
    CHECK(inner.records()[0].input_degree == 2);
    CHECK(inner.records()[0].output_degree == 3);
  }
  CHECK(outer.records().size() == 1);
}
