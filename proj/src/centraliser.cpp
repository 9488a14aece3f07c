#include "hopfsmooth/centraliser.hpp"

#include <algorithm>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/primdec.hpp"

namespace hopfsmooth {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

bool vanishes_at(const Ideal& J, const std::vector<Coeff>& point) {
  for (const auto& g : J.groebner().generators())
    if (g.evaluate(point) != 0) return false;
  return true;
}

// Sends the group variables to themselves in `target` and the chart
// variables to the coordinates of v.
std::vector<Polynomial> at_point(const ActionSpec& A, const Point& v, const RingPtr& target) {
  const std::size_t n = A.group.ring()->nvars();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(target, i));
  for (const auto& c : v) images.push_back(Polynomial::constant(target, c));
  return images;
}

void check_point(const ActionSpec& A, const Point& v) {
  if (v.size() != A.chart->nvars())
    throw InputError("PointArity", "point has " + std::to_string(v.size()) + " coordinates, chart has " +
                                       std::to_string(A.chart->nvars()));
  for (const auto& h : A.chart_relations)
    if (h.evaluate(v) != 0) throw InputError("PointOffChart", "point does not satisfy " + h.to_string());
}

}  // namespace

ActionSpec ActionSpec::make(HopfQuadruple group, std::vector<std::string> chart_vars,
                            const std::vector<std::string>& relations, const std::vector<std::string>& action,
                            const std::optional<std::string>& localizer) {
  const Field& k = group.ring()->field();
  RingPtr chart = Ring::make(k, chart_vars);
  std::vector<std::string> all = group.ring()->vars();
  all.insert(all.end(), chart_vars.begin(), chart_vars.end());
  RingPtr combined = Ring::make(k, std::move(all));
  if (action.size() != chart_vars.size())
    throw InputError("ArityMismatch", "one action polynomial per chart variable is required");
  std::vector<Polynomial> rel, act;
  for (const auto& s : relations) rel.push_back(parse_poly(s, chart));
  for (const auto& s : action) act.push_back(parse_poly(s, combined));
  std::optional<Polynomial> f;
  if (localizer) f = parse_poly(*localizer, combined);
  return {std::move(group), chart, std::move(rel), combined, std::move(act), std::move(f)};
}

std::uint64_t ActionSpec::bound() const {
  const std::size_t n = group.ring()->nvars();
  std::uint64_t d = 1;
  for (const auto& a : action)
    for (const auto& t : a.terms()) {
      std::vector<std::uint32_t> e(t.monomial.exponents().begin(), t.monomial.exponents().begin() + n);
      d = std::max(d, monomial_rank(Monomial(std::move(e))));
    }
  return d;
}

ActionSpec ActionSpec::change_field(const Field& field) const {
  HopfQuadruple g = hopfsmooth::change_field(group, field);
  RingPtr ch = chart->with_field(field);
  RingPtr comb = combined->with_field(field);
  std::vector<Polynomial> rel, act;
  for (const auto& h : chart_relations) rel.push_back(base_change(h, ch));
  for (const auto& a : action) act.push_back(base_change(a, comb));
  std::optional<Polynomial> f;
  if (localizer) f = base_change(*localizer, comb);
  return {std::move(g), ch, std::move(rel), comb, std::move(act), std::move(f)};
}

bool respects_chart(const ActionSpec& A) {
  if (A.chart_relations.empty()) return true;
  const std::size_t n = A.group.ring()->nvars();
  const std::size_t r = A.chart->nvars();
  std::vector<std::size_t> shift(r);
  for (std::size_t l = 0; l < r; ++l) shift[l] = n + l;
  std::vector<Polynomial> gens;
  for (const auto& g : A.group.relations()) gens.push_back(g.remap(A.combined, identity_map(n)));
  for (const auto& h : A.chart_relations) gens.push_back(h.remap(A.combined, shift));
  Ideal ambient(A.combined, gens);
  for (const auto& h : A.chart_relations)
    if (!ambient.contains(h.substitute(A.action, A.combined))) return false;
  return true;
}

Ideal centraliser_ideal(const ActionSpec& A, const Point& v) {
  check_point(A, v);
  const RingPtr& G = A.group.ring();
  const std::size_t n = G->nvars();
  RingPtr target = A.localizer ? extend_ring(G, "u") : G;
  std::vector<Polynomial> gens;
  for (const auto& g : A.group.relations()) gens.push_back(g.remap(target, identity_map(n)));
  auto images = at_point(A, v, target);
  for (std::size_t l = 0; l < A.action.size(); ++l)
    gens.push_back(A.action[l].substitute(images, target) - Polynomial::constant(target, v[l]));
  if (A.localizer) {
    Polynomial fbar = A.localizer->substitute(images, target);
    std::vector<Coeff> at_identity(A.group.counit());
    at_identity.push_back(0);
    if (fbar.evaluate(at_identity) == 0)
      throw InputError("LocalizerVanishes", "localizer vanishes at the identity and the chosen point");
    gens.push_back(Polynomial::variable(target, n) * fbar - Polynomial::constant(target, 1));
  }
  return Ideal(target, gens);
}

Ideal closure_ideal(const Ideal& I, const RingPtr& group_ring) {
  const std::size_t n = group_ring->nvars();
  std::vector<Polynomial> gens;
  if (I.ring()->nvars() == n) {
    for (const auto& g : I.generators()) gens.push_back(g.remap(group_ring, identity_map(n)));
    return Ideal(group_ring, gens);
  }
  std::vector<Polynomial> source = I.generators();
  if (source.empty()) return Ideal::zero(group_ring);
  GroebnerBasis gb = eliminate_keep_first(source, I.ring(), n);
  for (const auto& g : gb.generators()) gens.push_back(g.remap(group_ring, identity_map(n)));
  return Ideal(group_ring, gens);
}

Ideal identity_component(const Ideal& J, const std::vector<Coeff>& counit) {
  if (J.is_unit() || !vanishes_at(J, counit))
    throw InputError("IdentityNotOnScheme", "the counit point does not lie on the scheme");
  std::optional<Ideal> found;
  for (const auto& c : primdec(J)) {
    if (!c.isolated || !vanishes_at(c.ideal, counit)) continue;
    if (found) throw InputError("AmbiguousComponent", "several isolated components pass through the identity");
    found = c.ideal;
  }
  if (!found) throw InvariantViolation("NoIdentityComponent", "no isolated component passes through the identity");
  return *found;
}

CentraliserResult centraliser_quadruple(const ActionSpec& A, const std::vector<Point>& points, bool skip_component) {
  if (points.empty()) throw InputError("EmptyPointList", "at least one point is required");
  const RingPtr& G = A.group.ring();
  std::vector<Ideal> per_point;
  std::vector<Polynomial> sum;
  for (const auto& v : points) {
    Ideal J = closure_ideal(centraliser_ideal(A, v), G);
    Ideal Jv = skip_component ? J : identity_component(J, A.group.counit());
    for (const auto& g : Jv.groebner().generators()) sum.push_back(g);
    per_point.push_back(std::move(Jv));
  }
  Ideal total(G, sum);
  std::vector<Polynomial> basis = total.groebner().generators();
  HopfQuadruple H(G, basis, A.group.comul(), A.group.antipode(), A.group.counit());
  const auto& rep = H.check();
  if (!rep.valid)
    throw InputError("NotAnAction", "centraliser is not a subgroup: " + rep.failed_axiom + " (" + rep.detail + ")");
  std::uint64_t e = 0;
  for (const auto& g : basis)
    for (const auto& t : g.terms()) e = std::max(e, monomial_rank(t.monomial));
  SmoothnessReport smooth = is_smooth(H);
  return {std::move(H), smooth, e, std::move(per_point)};
}

namespace catalog {

ActionSpec natural_action(const Field& k) {
  return ActionSpec::make(general_linear(k), {"t1", "t2"}, {}, {"a*t1 + b*t2", "c*t1 + d*t2"});
}

ActionSpec frobenius_twist(const mpz_class& p) {
  Field k = Field::prime(p);
  if (!p.fits_ulong_p() || p > 64) throw ResourceLimitExceeded("Frobenius twist is only built for p <= 64");
  const std::string e = "^" + p.get_str();
  return ActionSpec::make(general_linear(k), {"t1", "t2"}, {},
                          {"a" + e + "*t1 + b" + e + "*t2", "c" + e + "*t1 + d" + e + "*t2"});
}

ActionSpec trivial_action(const HopfQuadruple& group, std::size_t r) {
  std::vector<std::string> vars, images;
  for (std::size_t l = 1; l <= r; ++l) {
    vars.push_back("t" + std::to_string(l));
    images.push_back(vars.back());
  }
  return ActionSpec::make(group, vars, {}, images);
}

}  // namespace catalog

}  // namespace hopfsmooth
