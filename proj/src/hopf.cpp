#include "hopfsmooth/hopf.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/linalg.hpp"

namespace hopfsmooth {

namespace {

std::vector<std::size_t> copy_map(std::size_t n, unsigned j) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = (j - 1) * n + i;
  return m;
}

// Index of the first relation f with Λ(f) outside J_r.
std::optional<std::size_t> first_escape(const std::vector<Polynomial>& images, const std::vector<Polynomial>& relations,
                                        const RingPtr& ring, unsigned r) {
  if (relations.empty()) return std::nullopt;
  RingPtr tensor = r == 1 ? ring : tensor_ring(ring, r);
  Ideal J(tensor, tensor_presentation(relations, ring, r));
  for (std::size_t k = 0; k < relations.size(); ++k)
    if (!J.contains(relations[k].substitute(images, tensor))) return k;
  return std::nullopt;
}

std::optional<std::size_t> first_off_point(const std::vector<Coeff>& point, const std::vector<Polynomial>& relations) {
  for (std::size_t k = 0; k < relations.size(); ++k)
    if (relations[k].evaluate(point) != 0) return k;
  return std::nullopt;
}

// Images of the variables of S^{⊗2} for a substitution given copy-wise.
std::vector<Polynomial> two_copy_images(const std::vector<Polynomial>& first, const std::vector<Polynomial>& second) {
  std::vector<Polynomial> images(first);
  images.insert(images.end(), second.begin(), second.end());
  return images;
}

std::vector<Polynomial> variables_of(const RingPtr& ring, unsigned copy, std::size_t n) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Polynomial::variable(ring, (copy - 1) * n + i));
  return v;
}

HopfReport failure(std::string axiom, std::string detail) { return {false, std::move(axiom), std::move(detail)}; }

HopfReport run_checks(const HopfQuadruple& H) {
  const RingPtr& S = H.ring();
  if (!S->field().is_field()) throw InputError("NotAField", "Hopf axioms are checked over a field; base change first");
  const std::size_t n = S->nvars();
  const auto& vars = S->vars();
  std::vector<Polynomial> B = H.ideal().groebner().generators();

  if (auto k = first_escape(H.comul(), B, S, 2))
    return failure("comul-factors", "comul(" + B[*k].to_string() + ") is not in J_2");
  if (auto k = first_escape(H.antipode(), B, S, 1))
    return failure("antipode-factors", "antipode(" + B[*k].to_string() + ") is not in J_1");
  if (auto k = first_off_point(H.counit(), B))
    return failure("counit-factors", "counit point does not satisfy " + B[*k].to_string());

  RingPtr T3 = tensor_ring(S, 3);
  Ideal J3(T3, tensor_presentation(B, S, 3));
  auto embed = [&](const Polynomial& f, unsigned a, unsigned b) {
    std::vector<std::size_t> m(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = (a - 1) * n + i;
      m[n + i] = (b - 1) * n + i;
    }
    return f.remap(T3, m);
  };
  std::vector<Polynomial> d12, d23;
  for (const auto& c : H.comul()) {
    d12.push_back(embed(c, 1, 2));
    d23.push_back(embed(c, 2, 3));
  }
  auto left = two_copy_images(d12, variables_of(T3, 3, n));
  auto right = two_copy_images(variables_of(T3, 1, n), d23);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial diff = H.comul()[i].substitute(left, T3) - H.comul()[i].substitute(right, T3);
    if (!J3.contains(diff)) return failure("coassociativity", "fails on " + vars[i]);
  }

  std::vector<Polynomial> eps, xs = variables_of(S, 1, n);
  for (const auto& c : H.counit()) eps.push_back(Polynomial::constant(S, c));
  auto counit_left = two_copy_images(eps, xs), counit_right = two_copy_images(xs, eps);
  auto anti_left = two_copy_images(H.antipode(), xs), anti_right = two_copy_images(xs, H.antipode());
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial& c = H.comul()[i];
    if (!H.ideal().contains(c.substitute(counit_left, S) - xs[i]) ||
        !H.ideal().contains(c.substitute(counit_right, S) - xs[i]))
      return failure("counit", "fails on " + vars[i]);
    if (!H.ideal().contains(c.substitute(anti_left, S) - eps[i]) ||
        !H.ideal().contains(c.substitute(anti_right, S) - eps[i]))
      return failure("antipode", "fails on " + vars[i]);
  }
  return {true, "", ""};
}

std::uint64_t max_rank(const Polynomial& f) {
  std::uint64_t d = 0;
  for (const auto& t : f.terms()) d = std::max(d, monomial_rank(t.monomial));
  return d;
}

}  // namespace

RingPtr tensor_ring(const RingPtr& ring, unsigned r) {
  if (r == 0) throw InputError("BadTensorPower", "tensor power must be at least 1");
  if (r == 1) return ring;
  std::vector<std::string> names;
  for (unsigned j = 1; j <= r; ++j)
    for (const auto& v : ring->vars()) names.push_back(v + std::string(j, '\''));
  return Ring::make(ring->field(), std::move(names));
}

Polynomial tensor_copy(const Polynomial& f, const RingPtr& tensor, unsigned j) {
  return f.remap(tensor, copy_map(f.ring()->nvars(), j));
}

std::vector<Polynomial> tensor_presentation(const std::vector<Polynomial>& gens, const RingPtr& ring, unsigned r) {
  RingPtr tensor = tensor_ring(ring, r);
  std::vector<Polynomial> out;
  for (unsigned j = 1; j <= r; ++j)
    for (const auto& g : gens) out.push_back(tensor_copy(g, tensor, j));
  return out;
}

bool factors_through(const std::vector<Polynomial>& images, const std::vector<Polynomial>& relations,
                     const RingPtr& ring, unsigned r) {
  if (images.size() != ring->nvars()) throw InputError("ArityMismatch", "one image per variable is required");
  if (relations.empty()) return true;
  std::vector<Polynomial> basis = Ideal(ring, relations).groebner().generators();
  return !first_escape(images, basis, ring, r);
}

bool factors_through(const std::vector<Coeff>& point, const std::vector<Polynomial>& relations) {
  return !first_off_point(point, relations);
}

struct HopfQuadruple::State {
  std::once_flag once;
  HopfReport report;
};

HopfQuadruple::HopfQuadruple(RingPtr ring, std::vector<Polynomial> relations, std::vector<Polynomial> comul,
                             std::vector<Polynomial> antipode, std::vector<Coeff> counit)
    : ring_(std::move(ring)),
      relations_(std::move(relations)),
      comul_(std::move(comul)),
      antipode_(std::move(antipode)),
      counit_(std::move(counit)),
      ideal_(ring_, relations_),
      state_(std::make_shared<State>()) {
  const std::size_t n = ring_->nvars();
  if (comul_.size() != n || antipode_.size() != n || counit_.size() != n)
    throw InputError("ArityMismatch", "comul, antipode and counit need one entry per variable");
  RingPtr T2 = tensor_ring(ring_, 2);
  for (auto& c : comul_)
    if (!c.ring()->same_as(*T2)) throw InputError("RingMismatch", "comultiplication must live in the doubled ring");
  for (auto& s : antipode_)
    if (!s.ring()->same_as(*ring_)) throw InputError("RingMismatch", "antipode must live in the base ring");
  for (auto& e : counit_) e = ring_->field().normalize(e);
}

const HopfReport& HopfQuadruple::check() const {
  std::call_once(state_->once, [&] { state_->report = run_checks(*this); });
  return state_->report;
}

std::uint64_t HopfQuadruple::bound() const {
  const std::size_t n = ring_->nvars();
  std::uint64_t d = relations_.size();
  for (const auto& f : relations_) d = std::max(d, max_rank(f));
  for (const auto& s : antipode_) d = std::max(d, max_rank(s));
  for (const auto& c : comul_)
    for (const auto& t : c.terms()) {
      std::vector<std::uint32_t> a(t.monomial.exponents().begin(), t.monomial.exponents().begin() + n);
      std::vector<std::uint32_t> b(t.monomial.exponents().begin() + n, t.monomial.exponents().end());
      d = std::max({d, monomial_rank(Monomial(std::move(a))), monomial_rank(Monomial(std::move(b)))});
    }
  return std::max<std::uint64_t>(d, 1);
}

namespace {

void require_hopf(const HopfQuadruple& H) {
  const auto& rep = H.check();
  if (!rep.valid) throw InputError("InvalidQuadruple", "not a Hopf quadruple: " + rep.failed_axiom + " (" + rep.detail + ")");
}

}  // namespace

int lie_dimension(const HopfQuadruple& H) {
  require_hopf(H);
  const std::size_t n = H.ring()->nvars();
  Matrix m;
  for (const auto& f : H.relations()) {
    std::vector<Coeff> row;
    for (std::size_t l = 0; l < n; ++l) row.push_back(f.derivative(l).evaluate(H.counit()));
    m.push_back(std::move(row));
  }
  return static_cast<int>(n - matrix_rank(H.ring()->field(), std::move(m)));
}

int group_dimension(const HopfQuadruple& H) {
  require_hopf(H);
  return H.ideal().dimension();
}

SmoothnessReport is_smooth(const HopfQuadruple& H) {
  int g = group_dimension(H);
  int l = lie_dimension(H);
  return {g, l, g == l, H.ring()->field().characteristic()};
}

HopfQuadruple change_field(const HopfQuadruple& H, const Field& field) {
  const Field& from = H.ring()->field();
  if (from == field) return H;
  if (from.is_prime()) throw InputError("BadBaseChange", "cannot change field away from " + from.name());
  RingPtr S = H.ring()->with_field(field);
  RingPtr T2 = tensor_ring(S, 2);
  std::vector<Polynomial> rel, com, anti;
  std::vector<Coeff> eps;
  for (const auto& f : H.relations()) rel.push_back(base_change(f, S));
  for (const auto& f : H.comul()) com.push_back(base_change(f, T2));
  for (const auto& f : H.antipode()) anti.push_back(base_change(f, S));
  for (const auto& c : H.counit()) eps.push_back(field.normalize(c));
  return HopfQuadruple(S, std::move(rel), std::move(com), std::move(anti), std::move(eps));
}

HopfQuadruple base_change_quadruple(const HopfQuadruple& H, const mpz_class& p) {
  return change_field(H, Field::prime(p));
}

namespace catalog {

namespace {

HopfQuadruple build(const Field& k, std::vector<std::string> vars, const std::vector<std::string>& relations,
                    const std::vector<std::string>& comul, const std::vector<std::string>& antipode,
                    const std::vector<std::string>& counit) {
  RingPtr S = Ring::make(k, std::move(vars));
  RingPtr T2 = tensor_ring(S, 2);
  std::vector<Polynomial> rel, com, anti;
  std::vector<Coeff> eps;
  for (const auto& s : relations) rel.push_back(parse_poly(s, S));
  for (const auto& s : comul) com.push_back(parse_poly(s, T2));
  for (const auto& s : antipode) anti.push_back(parse_poly(s, S));
  for (const auto& s : counit) eps.push_back(k.parse_literal(s));
  return HopfQuadruple(S, std::move(rel), std::move(com), std::move(anti), std::move(eps));
}

}  // namespace

HopfQuadruple additive(const Field& k) { return build(k, {"x"}, {}, {"x' + x''"}, {"-x"}, {"0"}); }

HopfQuadruple multiplicative(const Field& k) {
  return build(k, {"x", "y"}, {"x*y - 1"}, {"x'*x''", "y'*y''"}, {"y", "x"}, {"1", "1"});
}

HopfQuadruple roots_of_unity(const Field& k, unsigned n) {
  if (n == 0) throw InputError("BadParameter", "mu_n needs n >= 1");
  std::string inverse = n == 1 ? "1" : n == 2 ? "x" : "x^" + std::to_string(n - 1);
  return build(k, {"x"}, {"x^" + std::to_string(n) + " - 1"}, {"x'*x''"}, {inverse}, {"1"});
}

HopfQuadruple special_linear(const Field& k) {
  return build(k, {"a", "b", "c", "d"}, {"a*d - b*c - 1"},
               {"a'*a'' + b'*c''", "a'*b'' + b'*d''", "c'*a'' + d'*c''", "c'*b'' + d'*d''"}, {"d", "-b", "-c", "a"},
               {"1", "0", "0", "1"});
}

HopfQuadruple general_linear(const Field& k) {
  return build(k, {"a", "b", "c", "d", "u"}, {"a*d*u - b*c*u - 1"},
               {"a'*a'' + b'*c''", "a'*b'' + b'*d''", "c'*a'' + d'*c''", "c'*b'' + d'*d''", "u'*u''"},
               {"d*u", "-b*u", "-c*u", "a*u", "a*d - b*c"}, {"1", "0", "0", "1", "1"});
}

HopfQuadruple alpha(const mpz_class& p) {
  Field k = Field::prime(p);
  if (!p.fits_ulong_p() || p > 64) throw ResourceLimitExceeded("alpha_p is only built for p <= 64");
  return build(k, {"x"}, {"x^" + p.get_str()}, {"x' + x''"}, {"-x"}, {"0"});
}

}  // namespace catalog

}  // namespace hopfsmooth
