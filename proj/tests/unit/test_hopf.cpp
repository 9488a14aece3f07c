#include "doctest.h"
#include "hopfsmooth/error.hpp"
#include "hopfsmooth/hopf.hpp"

using namespace hopfsmooth;

namespace {

std::vector<HopfQuadruple> rational_catalog() {
  Field Q = Field::rationals();
  return {catalog::additive(Q),          catalog::multiplicative(Q), catalog::roots_of_unity(Q, 4),
          catalog::roots_of_unity(Q, 6), catalog::special_linear(Q), catalog::general_linear(Q)};
}

HopfQuadruple with_maps(const HopfQuadruple& H, std::vector<Polynomial> comul, std::vector<Polynomial> antipode,
                        std::vector<Coeff> counit) {
  return HopfQuadruple(H.ring(), H.relations(), std::move(comul), std::move(antipode), std::move(counit));
}

Polynomial bump(const Polynomial& f, std::size_t term) {
  std::vector<Term> ts = f.terms();
  ts[term].coeff = f.field().add(ts[term].coeff, 1);
  return Polynomial::from_terms(f.ring(), std::move(ts));
}

// Every single-coefficient +1 perturbation of Δ, σ and ε.
std::vector<HopfQuadruple> perturbations(const HopfQuadruple& H) {
  std::vector<HopfQuadruple> out;
  const std::size_t n = H.ring()->nvars();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < H.comul()[i].num_terms(); ++t) {
      auto c = H.comul();
      c[i] = bump(c[i], t);
      out.push_back(with_maps(H, c, H.antipode(), H.counit()));
    }
    for (std::size_t t = 0; t < H.antipode()[i].num_terms(); ++t) {
      auto s = H.antipode();
      s[i] = bump(s[i], t);
      out.push_back(with_maps(H, H.comul(), s, H.counit()));
    }
    auto e = H.counit();
    e[i] = H.ring()->field().add(e[i], 1);
    out.push_back(with_maps(H, H.comul(), H.antipode(), e));
  }
  return out;
}

}  // namespace

TEST_CASE("tensor presentations") {
  auto S = Ring::make(Field::rationals(), {"x"});
  auto B2 = tensor_presentation({parse_poly("x^2", S)}, S, 2);
  REQUIRE(B2.size() == 2);
  CHECK(B2[0].to_string() == "x'^2");
  CHECK(B2[1].to_string() == "x''^2");
  CHECK(tensor_presentation({}, S, 3).empty());
  auto R = Ring::make(Field::rationals(), {"a", "b", "c", "d"});
  Ideal sl2(R, {parse_poly("a*d - b*c - 1", R), parse_poly("a - d", R)});
  CHECK(is_groebner(tensor_presentation(sl2.groebner().generators(), R, 3)));
  CHECK(tensor_ring(R, 3)->nvars() == 12);
  CHECK(tensor_ring(R, 2)->vars()[5] == "b''");
}

TEST_CASE("factor-through checks") {
  auto S = Ring::make(Field::rationals(), {"x"});
  auto T2 = tensor_ring(S, 2);
  std::vector<Polynomial> mu2{parse_poly("x^2 - 1", S)};
  CHECK(factors_through({parse_poly("x'*x''", T2)}, mu2, S, 2));
  CHECK_FALSE(factors_through({parse_poly("x' + x''", T2)}, mu2, S, 2));
  CHECK(factors_through({parse_poly("x' + x''", T2)}, {}, S, 2));
  CHECK(factors_through(std::vector<Coeff>{Coeff(-1)}, mu2));
  CHECK_FALSE(factors_through(std::vector<Coeff>{Coeff(2)}, mu2));
}

TEST_CASE("axiom verification on the catalog") {
  for (const auto& H : rational_catalog()) CHECK(H.is_hopf());
  for (long p : {2, 3, 5, 7}) {
    Field k = Field::prime(p);
    CHECK(catalog::additive(k).is_hopf());
    CHECK(catalog::multiplicative(k).is_hopf());
    CHECK(catalog::roots_of_unity(k, 6).is_hopf());
    CHECK(catalog::special_linear(k).is_hopf());
    CHECK(catalog::general_linear(k).is_hopf());
    CHECK(catalog::alpha(p).is_hopf());
  }
  for (unsigned n = 1; n <= 7; ++n) CHECK(catalog::roots_of_unity(Field::rationals(), n).is_hopf());

  // α_2 data read over Q: Δ(x^2) = x'^2 + 2x'x'' + x''^2 escapes J_2.
  auto S = Ring::make(Field::rationals(), {"x"});
  HopfQuadruple a2(S, {parse_poly("x^2", S)}, {parse_poly("x' + x''", tensor_ring(S, 2))}, {parse_poly("-x", S)},
                   {Coeff(0)});
  CHECK_FALSE(a2.is_hopf());
  CHECK(a2.check().failed_axiom == "comul-factors");
  CHECK(base_change_quadruple(a2, 2).is_hopf());

  HopfQuadruple wrong(S, {}, {parse_poly("x'*x''", tensor_ring(S, 2))}, {parse_poly("-x", S)}, {Coeff(0)});
  CHECK(wrong.check().failed_axiom == "counit");
  CHECK_THROWS_AS(lie_dimension(wrong), InputError);
  CHECK_THROWS_AS(HopfQuadruple(S, {}, {}, {}, {}), InputError);
}

TEST_CASE("perturbed structure maps are rejected") {
  std::vector<HopfQuadruple> base = rational_catalog();
  base.push_back(catalog::alpha(2));
  base.push_back(catalog::alpha(3));
  base.push_back(catalog::special_linear(Field::prime(5)));
  for (const auto& H : base) {
    auto ps = perturbations(H);
    std::size_t failing = 0;
    for (const auto& P : ps) failing += P.is_hopf() ? 0 : 1;
    CHECK(10 * failing >= 9 * ps.size());
  }
}

TEST_CASE("dimensions and smoothness") {
  Field Q = Field::rationals();
  CHECK(lie_dimension(catalog::additive(Q)) == 1);
  CHECK(group_dimension(catalog::additive(Q)) == 1);
  CHECK(group_dimension(catalog::special_linear(Q)) == 3);
  CHECK(lie_dimension(catalog::special_linear(Q)) == 3);
  CHECK(group_dimension(catalog::general_linear(Q)) == 4);
  CHECK(lie_dimension(catalog::general_linear(Q)) == 4);
  for (unsigned n = 1; n <= 7; ++n) CHECK(lie_dimension(catalog::roots_of_unity(Q, n)) == 0);
  for (const auto& H : rational_catalog()) {
    auto rep = is_smooth(H);
    CHECK(rep.smooth);
    CHECK(rep.characteristic == 0);
  }
  auto mu6_5 = is_smooth(catalog::roots_of_unity(Field::prime(5), 6));
  CHECK(mu6_5.group_dim == 0);
  CHECK(mu6_5.lie_dim == 0);
  CHECK(mu6_5.smooth);
  for (long p : {2, 3}) {
    auto rep = is_smooth(catalog::roots_of_unity(Field::prime(p), 6));
    CHECK(rep.group_dim == 0);
    CHECK(rep.lie_dim == 1);
    CHECK_FALSE(rep.smooth);
  }
  for (long p : {2, 3, 5}) {
    auto rep = is_smooth(catalog::alpha(p));
    CHECK(rep.group_dim == 0);
    CHECK(rep.lie_dim == 1);
  }
  // Tangent space dimension bounds the group dimension.
  for (long p : {2, 3, 5, 7})
    for (const auto& H : rational_catalog()) {
      auto rep = is_smooth(base_change_quadruple(H, p));
      CHECK(rep.lie_dim >= rep.group_dim);
    }
}

TEST_CASE("base change") {
  auto sl2z = change_field(catalog::special_linear(Field::rationals()), Field::rationals());
  auto Z = Field::integers();
  auto S = Ring::make(Z, {"a", "b", "c", "d"});
  HopfQuadruple overZ(S, {base_change(sl2z.relations()[0], S)}, [&] {
    std::vector<Polynomial> c;
    for (const auto& f : sl2z.comul()) c.push_back(base_change(f, tensor_ring(S, 2)));
    return c;
  }(), [&] {
    std::vector<Polynomial> a;
    for (const auto& f : sl2z.antipode()) a.push_back(base_change(f, S));
    return a;
  }(), sl2z.counit());
  CHECK_THROWS_AS(overZ.is_hopf(), InputError);
  auto sl2_7 = base_change_quadruple(overZ, 7);
  CHECK(sl2_7.is_hopf());
  CHECK(sl2_7.ring()->field().name() == "Fp:7");
  CHECK(base_change_quadruple(catalog::roots_of_unity(Field::rationals(), 6), 5).is_hopf());
  for (long p : {2, 3, 5, 7, 11})
    for (const auto& H : rational_catalog()) CHECK(base_change_quadruple(H, p).is_hopf());

  auto R = Ring::make(Field::rationals(), {"x"});
  HopfQuadruple half(R, {parse_poly("x^2 - 1/2", R)}, {parse_poly("x'*x''", tensor_ring(R, 2))}, {parse_poly("x", R)},
                     {Coeff(1)});
  CHECK_THROWS_AS(base_change_quadruple(half, 2), InputError);
  CHECK_THROWS_AS(change_field(catalog::alpha(2), Field::prime(3)), InputError);
}

TEST_CASE("bounds") {
  Field Q = Field::rationals();
  CHECK(catalog::additive(Q).bound() == 2);
  // x^6 has rank 7 in one variable.
  CHECK(catalog::roots_of_unity(Q, 6).bound() == 7);
  CHECK(catalog::special_linear(Q).bound() >= 5);
}
