#include <random>

#include "../support/gen.hpp"
#include "doctest.h"
#include "hopfsmooth/error.hpp"
#include "hopfsmooth/factor.hpp"
#include "hopfsmooth/fraction.hpp"
#include "hopfsmooth/gcd.hpp"
#include "hopfsmooth/univariate.hpp"

using namespace hopfsmooth;

namespace {

RingPtr qring(std::vector<std::string> vars) { return Ring::make(Field::rationals(), std::move(vars)); }
RingPtr pring(long p, std::vector<std::string> vars) { return Ring::make(Field::prime(p), std::move(vars)); }
Polynomial P(const RingPtr& r, const char* s) { return parse_poly(s, r); }

}  // namespace

TEST_CASE("parse and print") {
  auto R = qring({"x", "y"});
  Polynomial f = P(R, "x^2*y - 3*y");
  REQUIRE(f.num_terms() == 2);
  CHECK(f.terms()[0].monomial == Monomial({2, 1}));
  CHECK(f.terms()[0].coeff == 1);
  CHECK(f.terms()[1].monomial == Monomial({0, 1}));
  CHECK(f.terms()[1].coeff == -3);
  CHECK(f.to_string() == "x^2*y - 3*y");
  CHECK(P(R, "0").is_zero());
  CHECK(P(pring(2, {"x"}), "x + x").is_zero());
  CHECK(P(R, "1/2*x - 2/4").to_string() == "1/2*x - 1/2");
  CHECK(P(R, "(x+y)^2").to_string() == "x^2 + 2*x*y + y^2");
  CHECK(P(R, "-x").to_string() == "-x");
  CHECK(P(pring(5, {"x"}), "-x").to_string() == "4*x");

  CHECK_THROWS_AS(P(R, "x + z"), ParseError);
  CHECK_THROWS_AS(P(R, "x / y"), ParseError);
  CHECK_THROWS_AS(P(R, "x +"), ParseError);
  try {
    P(R, "x ** y");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("print then reparse is the identity") {
  std::mt19937_64 rng(7);
  for (auto field : {Field::rationals(), Field::prime(7)}) {
    auto R = Ring::make(field, {"x", "y", "z"});
    for (int i = 0; i < 300; ++i) {
      Polynomial f = testgen::random_poly(rng, R, 4, 6, field.kind() == FieldKind::Rationals);
      CHECK(parse_poly(f.to_string(), R) == f);
    }
  }
}

TEST_CASE("graded lex comparisons") {
  auto ord = MonomialOrder::graded_lex();
  Monomial x({1, 0}), y({0, 1}), y2({0, 2});
  CHECK(ord.compare(x, y) > 0);
  CHECK(ord.compare(y2, x) > 0);
  CHECK(ord.compare(x, x) == 0);
  CHECK_THROWS_AS(ord.compare(x, Monomial({1, 0, 0})), InputError);
}

TEST_CASE("monomial orders are admissible") {
  std::mt19937_64 rng(11);
  std::vector<MonomialOrder> orders{MonomialOrder::graded_lex(), MonomialOrder::lex(),
                                    MonomialOrder::block({1, 2}), MonomialOrder::block({2, 1})};
  int checked = 0;
  while (checked < 10000) {
    Monomial a = testgen::random_monomial(rng, 3, 6);
    Monomial b = testgen::random_monomial(rng, 3, 6);
    Monomial n = testgen::random_monomial(rng, 3, 4);
    if (n.is_one()) continue;
    for (const auto& ord : orders) {
      Monomial m1 = a, m2 = b;
      int c = static_cast<int>(ord.compare(m1, m2) > 0) - static_cast<int>(ord.compare(m1, m2) < 0);
      if (c == 0) continue;
      if (c < 0) std::swap(m1, m2);
      CHECK(ord.compare(n * m1, n * m2) > 0);
      CHECK(ord.compare(n * m2, m2) > 0);
    }
    ++checked;
  }
}

TEST_CASE("monomial ranks") {
  CHECK(monomial_unrank(1, 2).is_one());
  CHECK_THROWS_AS(monomial_unrank(0, 2), InputError);
  // Oracle: enumerate degree <= 2 monomials and sort them by graded lex.
  std::vector<Monomial> all;
  for (std::uint32_t a = 0; a <= 2; ++a)
    for (std::uint32_t b = 0; a + b <= 2; ++b) all.push_back(Monomial({a, b}));
  auto ord = MonomialOrder::graded_lex();
  std::sort(all.begin(), all.end(), [&](const Monomial& p, const Monomial& q) { return ord.compare(p, q) < 0; });
  std::vector<Monomial> expected{Monomial({0, 0}), Monomial({0, 1}), Monomial({1, 0}),
                                 Monomial({0, 2}), Monomial({1, 1}), Monomial({2, 0})};
  CHECK(all == expected);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(monomial_rank(all[i]) == i + 1);

  for (std::size_t n = 1; n <= 4; ++n) {
    Monomial prev = monomial_unrank(1, n);
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      Monomial m = monomial_unrank(k, n);
      REQUIRE(monomial_rank(m) == k);
      if (k > 1) REQUIRE(ord.compare(m, prev) > 0);
      prev = m;
    }
  }
}

TEST_CASE("bounded encodings") {
  auto R = qring({"x"});
  BoundedPoly b = to_bounded(P(R, "x"), 2);
  CHECK(b.coeffs == std::vector<Coeff>{0, 1});
  CHECK(to_bounded(Polynomial(R), 3).coeffs == std::vector<Coeff>{0, 0, 0});
  CHECK(monomial_rank(Monomial(std::vector<std::uint32_t>{3})) == 4);
  CHECK_THROWS_AS(to_bounded(P(R, "x^3"), 3), InputError);
  auto R2 = qring({"x", "y"});
  Polynomial f = P(R2, "3*x^2 - y + 7");
  CHECK(from_bounded(to_bounded(f, 6), R2) == f);
}

TEST_CASE("base change") {
  auto Z = Ring::make(Field::integers(), {"x"});
  Polynomial f = P(Z, "6*x + 1");
  Polynomial f3 = base_change(f, mpz_class(3));
  CHECK(f3.to_string() == "1");
  Polynomial f2 = base_change(f, mpz_class(2));
  CHECK(base_change(f2, mpz_class(2)) == f2);
  CHECK_THROWS_AS(base_change(P(qring({"x"}), "1/2*x"), mpz_class(2)), InputError);
  try {
    base_change(P(qring({"x"}), "1/2*x"), mpz_class(2));
  } catch (const InputError& e) {
    CHECK(e.code() == "BadReductionDenominator");
  }
  CHECK(base_change(P(qring({"x"}), "1/2*x"), mpz_class(3)).to_string() == "2*x");
}

TEST_CASE("ring axioms and base change is multiplicative") {
  std::mt19937_64 rng(3);
  auto R = qring({"x", "y"});
  for (int i = 0; i < 200; ++i) {
    auto f = testgen::random_poly(rng, R, 3, 5, true);
    auto g = testgen::random_poly(rng, R, 3, 5, true);
    auto h = testgen::random_poly(rng, R, 3, 5, true);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f * g == g * f);
    CHECK(f - f == Polynomial(R));
  }
  auto Z = Ring::make(Field::integers(), {"x", "y"});
  for (int i = 0; i < 1000; ++i) {
    auto f = testgen::random_poly(rng, Z, 3, 4);
    auto g = testgen::random_poly(rng, Z, 3, 4);
    long p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(i % 4)];
    REQUIRE(base_change(f * g, mpz_class(p)) == base_change(f, mpz_class(p)) * base_change(g, mpz_class(p)));
  }
}

TEST_CASE("substitution, derivative and evaluation") {
  auto R = qring({"x", "y"});
  Polynomial f = P(R, "x^2*y + 3");
  std::vector<Polynomial> images{P(R, "x + y"), P(R, "x - y")};
  CHECK(f.substitute(images, R) == P(R, "(x+y)^2*(x-y) + 3"));
  CHECK(f.derivative(0) == P(R, "2*x*y"));
  std::vector<Coeff> pt{2, 5};
  CHECK(f.evaluate(pt) == 23);
  CHECK(P(pring(3, {"x"}), "x^3 + x").derivative(0) == P(pring(3, {"x"}), "1"));
}

TEST_CASE("multivariate gcd") {
  auto R = qring({"x", "y", "t"});
  Polynomial a = P(R, "(x + y*t - 1)*(x^2 - t)");
  Polynomial b = P(R, "(x + y*t - 1)*(y^2 + x*t + 2)");
  CHECK(poly_gcd(a, b) == P(R, "x + y*t - 1").monic());
  CHECK(poly_gcd(P(R, "x*t"), P(R, "t^2")) == P(R, "t"));
  CHECK(poly_lcm(P(R, "x*t"), P(R, "t^2")) == P(R, "x*t^2"));
  CHECK(poly_gcd(P(R, "2"), P(R, "x")).is_one());

  std::mt19937_64 rng(5);
  auto F = pring(5, {"x", "y"});
  for (int i = 0; i < 60; ++i) {
    auto g = testgen::random_nonzero(rng, F, 2, 3);
    auto u = testgen::random_nonzero(rng, F, 2, 3);
    auto v = testgen::random_nonzero(rng, F, 2, 3);
    Polynomial d = poly_gcd(g * u, g * v);
    CHECK(try_divide(d, g.monic()).has_value());
    CHECK(try_divide(g * u, d).has_value());
    CHECK(try_divide(g * v, d).has_value());
  }
}

TEST_CASE("rational functions") {
  auto R = qring({"t", "s"});
  RationalFunction a(P(R, "t^2 - 1"), P(R, "2*t + 2"));
  CHECK(a.numerator() == P(R, "1/2*t - 1/2"));
  CHECK(a.denominator().is_one());
  RationalFunction b(P(R, "1"), P(R, "t"));
  RationalFunction c = a + b;
  CHECK(c.denominator() == P(R, "t"));
  CHECK((c - b) == a);
  CHECK((b / b).numerator().is_one());
  CHECK_THROWS_AS(RationalFunction(P(R, "1"), Polynomial(R)), InvariantViolation);
}

TEST_CASE("univariate factorization over prime fields") {
  ModPoly f(mpz_class(5), {1, 0, 1});  // x^2 + 1
  auto fac = factor_mod(f);
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].first == ModPoly(mpz_class(5), {2, 1}));
  CHECK(fac[1].first == ModPoly(mpz_class(5), {-2, 1}));

  std::mt19937_64 rng(17);
  for (long p : {2L, 3L, 5L, 7L, 101L}) {
    for (int it = 0; it < 40; ++it) {
      std::uniform_int_distribution<long> coef(0, p - 1);
      std::vector<mpz_class> c;
      int deg = 1 + static_cast<int>(rng() % 9);
      for (int i = 0; i < deg; ++i) c.emplace_back(coef(rng));
      c.emplace_back(1);
      ModPoly g(mpz_class(p), c);
      ModPoly sq = g * g * ModPoly(mpz_class(p), {1, 1});
      auto parts = factor_mod(sq);
      ModPoly prod = ModPoly::constant(mpz_class(p), 1);
      for (auto& [h, m] : parts) {
        for (unsigned k = 0; k < m; ++k) prod = prod * h;
        // Irreducibility by brute force for small degrees: no root and no quadratic factor is too
        // costly in general; check x^(p^deg) = x mod h and gcd conditions instead.
        ModPoly x = ModPoly::x(mpz_class(p));
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(h.degree()));
        CHECK(powmod(x, q, h) == x % h);
        for (long d = 1; d < h.degree(); ++d) {
          if (h.degree() % d) continue;
          mpz_class qd;
          mpz_pow_ui(qd.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(d));
          CHECK(gcd(powmod(x, qd, h) - x, h).is_one());
        }
      }
      CHECK(prod == sq.monic());
    }
  }
}

TEST_CASE("factor_univariate") {
  auto Q = qring({"x"});
  auto f1 = factor_univariate(P(Q, "x^2 - 1"), 0);
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].factor.to_string() == "x + 1");
  CHECK(f1[1].factor.to_string() == "x - 1");

  auto F5 = pring(5, {"x"});
  auto f2 = factor_univariate(P(F5, "x^2 + 1"), 0);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].factor.to_string() == "x + 2");
  CHECK(f2[1].factor.to_string() == "x + 3");

  auto F5t = pring(5, {"x", "t"});
  auto f3 = factor_univariate(P(F5t, "x^2 - t"), 0);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].multiplicity == 1);

  auto f4 = factor_univariate(P(Q, "x^6 - 1"), 0);
  std::vector<std::string> names;
  for (auto& f : f4) names.push_back(f.factor.to_string());
  CHECK(names == std::vector<std::string>{"x + 1", "x - 1", "x^2 + x + 1", "x^2 - x + 1"});

  auto Qxt = qring({"x", "t"});
  auto f5 = factor_univariate(P(Qxt, "t*(x^2 - t^2)^2*(x + 1)"), 0);
  REQUIRE(f5.size() == 3);
  CHECK(f5[0].factor.to_string() == "x + 1");
  CHECK(f5[0].multiplicity == 1);
  CHECK(f5[1].factor.to_string() == "x + t");
  CHECK(f5[2].factor.to_string() == "x - t");
  CHECK(f5[2].multiplicity == 2);

  auto f6 = factor_univariate(P(qring({"x"}), "4*x^4 - 1"), 0);
  REQUIRE(f6.size() == 2);
  CHECK(f6[0].factor.to_string() == "2*x^2 + 1");
  CHECK(f6[1].factor.to_string() == "2*x^2 - 1");

  auto F3 = pring(3, {"x"});
  auto f7 = factor_univariate(P(F3, "x^3 - x"), 0);
  CHECK(f7.size() == 3);
  auto f8 = factor_univariate(P(F3, "(x^3 + 2)^2"), 0);  // (x+2)^6 in char 3
  REQUIRE(f8.size() == 1);
  CHECK(f8[0].multiplicity == 6);
  CHECK(factor_univariate(P(Qxt, "t^2 + 1"), 0).empty());
  CHECK_THROWS_AS(factor_univariate(Polynomial(Q), 0), InputError);
}

TEST_CASE("factorization over Q round-trips on random products") {
  std::mt19937_64 rng(23);
  auto Q = qring({"x"});
  for (int it = 0; it < 40; ++it) {
    Polynomial f = Polynomial::constant(Q, 1);
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) {
      Polynomial g = testgen::random_poly(rng, Q, 3, 4);
      if (g.total_degree() < 1) g = g + P(Q, "x");
      f *= g;
    }
    if (f.total_degree() < 1) continue;
    auto fac = factor_univariate(f, 0);
    Polynomial prod = Polynomial::constant(Q, 1);
    for (auto& [g, m] : fac) prod *= g.pow(m);
    CHECK(canonical_associate(prod) == canonical_associate(f));
  }
}
