#include "hopfsmooth/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

RingPtr Ring::make(Field field, std::vector<std::string> vars, MonomialOrder order) {
  order.check_arity(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw InputError("DuplicateVariable", "variable '" + vars[i] + "' declared twice");
  return RingPtr(new Ring(std::move(field), std::move(vars), std::move(order)));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw InputError("UnknownVariable", "unknown variable '" + std::string(name) + "'");
  return *i;
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(field_, vars_, std::move(order)); }
RingPtr Ring::with_field(Field field) const { return make(std::move(field), vars_, order_); }

Polynomial Polynomial::constant(RingPtr ring, const Coeff& c) {
  Polynomial p(std::move(ring));
  Coeff v = p.field().normalize(c);
  if (v != 0) p.terms_.push_back({Monomial(p.ring_->nvars()), v});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Polynomial p(std::move(ring));
  p.terms_.push_back({Monomial::variable(p.ring_->nvars(), index), Coeff(1)});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  std::size_t i = ring->require_index(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::term(RingPtr ring, Monomial m, const Coeff& c) {
  Polynomial p(std::move(ring));
  Coeff v = p.field().normalize(c);
  if (v != 0) p.terms_.push_back({std::move(m), v});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  const auto& order = p.ring_->order();
  const auto& field = p.field();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff = field.add(p.terms_.back().coeff, field.normalize(t.coeff));
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      t.coeff = field.normalize(t.coeff);
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

Polynomial Polynomial::tail() const {
  Polynomial p(ring_);
  if (terms_.size() > 1) p.terms_.assign(terms_.begin() + 1, terms_.end());
  return p;
}

bool Polynomial::is_one() const { return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coeff == 1; }

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InvariantViolation("ZeroPolynomial", "leading term of the zero polynomial");
  return terms_.front();
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& t : terms_) d = std::max<long>(d, t.monomial.degree());
  return d;
}

long Polynomial::degree_in(std::size_t var) const {
  long d = -1;
  for (const auto& t : terms_) d = std::max<long>(d, t.monomial[var]);
  return d;
}

bool Polynomial::only_uses(const std::vector<bool>& allowed) const {
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < allowed.size(); ++i)
      if (!allowed[i] && t.monomial[i] != 0) return false;
  return true;
}

std::vector<bool> Polynomial::used_variables() const {
  std::vector<bool> used(ring_ ? ring_->nvars() : 0, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < used.size(); ++i)
      if (t.monomial[i] != 0) used[i] = true;
  return used;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    throw InputError("RingMismatch", "polynomials belong to different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  const auto& order = ring_->order();
  const auto& field = ring_->field();
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    auto c = order.compare(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coeff s = field.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) r.terms_.push_back({terms_[i].monomial, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::sub_mul_term(const Monomial& m, const Coeff& c, const Polynomial& g) const {
  check_same_ring(g);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  const auto& order = ring_->order();
  const auto& field = ring_->field();
  const Coeff negc = field.neg(c);
  std::size_t i = 0, j = 0;
  Monomial next;
  bool have_next = false;
  auto load = [&]() {
    if (j < g.terms_.size()) {
      next = m * g.terms_[j].monomial;
      have_next = true;
    } else {
      have_next = false;
    }
  };
  load();
  while (i < terms_.size() && have_next) {
    auto cmp = order.compare(terms_[i].monomial, next);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({next, field.mul(negc, g.terms_[j].coeff)});
      ++j;
      load();
    } else {
      Coeff s = field.add(terms_[i].coeff, field.mul(negc, g.terms_[j].coeff));
      if (s != 0) r.terms_.push_back({terms_[i].monomial, s});
      ++i;
      ++j;
      load();
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  while (have_next) {
    r.terms_.push_back({next, field.mul(negc, g.terms_[j].coeff)});
    ++j;
    load();
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& large = terms_.size() <= o.terms_.size() ? o : *this;
  if (small.terms_.size() == 1) return large.mul_term(small.terms_[0].monomial, small.terms_[0].coeff);
  std::vector<Term> prods;
  prods.reserve(small.terms_.size() * large.terms_.size());
  const auto& field = ring_->field();
  for (const auto& a : small.terms_)
    for (const auto& b : large.terms_) prods.push_back({a.monomial * b.monomial, field.mul(a.coeff, b.coeff)});
  return from_terms(ring_, std::move(prods));
}

Polynomial Polynomial::scale(const Coeff& c) const {
  Coeff v = field().normalize(c);
  if (v == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, v);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Coeff& c) const {
  Coeff v = field().normalize(c);
  if (v == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, field().mul(t.coeff, v)});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scale(field().inv(leading_coeff()));
}

Coeff Polynomial::evaluate(std::span<const Coeff> point) const {
  if (point.size() != ring_->nvars()) throw InputError("DimensionMismatch", "evaluation point has wrong arity");
  const auto& field = ring_->field();
  Coeff acc = 0;
  for (const auto& t : terms_) {
    Coeff v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (t.monomial[i]) v = field.mul(v, field.pow(field.normalize(point[i]), t.monomial[i]));
    acc = field.add(acc, v);
  }
  return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, const RingPtr& target) const {
  if (images.size() != ring_->nvars()) throw InputError("DimensionMismatch", "substitution needs one image per variable");
  // Cache powers of each image as they are requested.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Polynomial term = constant(target, target->field().normalize(t.coeff));
    for (std::size_t i = 0; i < images.size() && !term.is_zero(); ++i)
      if (t.monomial[i]) term = term * power(i, t.monomial[i]);
    for (auto& tt : term.terms_) acc.push_back(std::move(tt));
  }
  return from_terms(target, std::move(acc));
}

Polynomial Polynomial::remap(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(target->nvars(), 0);
    for (std::size_t i = 0; i < var_map.size(); ++i) e[var_map[i]] += t.monomial[i];
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
  if (target->nvars() != ring_->nvars()) throw InputError("RingMismatch", "target ring has a different arity");
  if (target->same_as(*ring_)) return *this;
  return from_terms(target, terms_);
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial[var] == 0) continue;
    std::vector<std::uint32_t> e(t.monomial.exponents().begin(), t.monomial.exponents().end());
    Coeff c = field().mul(t.coeff, field().from_int(static_cast<long>(e[var])));
    --e[var];
    if (c != 0) out.push_back({Monomial(std::move(e)), c});
  }
  return from_terms(ring_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
  if (!ring_->same_as(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].monomial != o.terms_[i].monomial || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  const auto grlex = MonomialOrder::graded_lex();
  if (!(ring_->order() == grlex))
    std::sort(sorted.begin(), sorted.end(),
              [&](const Term* a, const Term* b) { return grlex.compare(a->monomial, b->monomial) > 0; });
  std::string out;
  bool first = true;
  for (const Term* t : sorted) {
    Coeff c = t->coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    std::string body;
    if (t->monomial.is_one()) body = c.get_str();
    else if (c == 1) body = format_monomial(t->monomial, ring_->vars());
    else body = c.get_str() + "*" + format_monomial(t->monomial, ring_->vars());
    if (first) out += negative ? "-" + body : body;
    else out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      negate = true;
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class num(std::string(s_.substr(start, pos_ - start)), 10);
      mpz_class den = 1;
      if (peek('/')) {
        ++pos_;
        skip_ws();
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) throw ParseError("division is only allowed inside a/b literals", dstart);
        den = mpz_class(std::string(s_.substr(dstart, pos_ - dstart)), 10);
        if (den == 0) throw ParseError("zero denominator", dstart);
      }
      Coeff q(num, den);
      q.canonicalize();
      if (q.get_den() != 1 && ring_->field().kind() == FieldKind::Integers)
        throw ParseError("fractional literal over Z", start);
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      while (pos_ < s_.size() && s_[pos_] == '\'') ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      return Polynomial::variable(ring_, *idx);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '/') throw ParseError("division is only allowed inside a/b literals", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const RingPtr& ring) { return PolyParser(text, ring).parse(); }

BoundedPoly to_bounded(const Polynomial& f, std::size_t d) {
  BoundedPoly b{d, std::vector<Coeff>(d, Coeff(0))};
  for (const auto& t : f.terms()) {
    std::uint64_t r = monomial_rank(t.monomial);
    if (r > d)
      throw InputError("UnboundedTerm", "term " + format_monomial(t.monomial, f.ring()->vars()) + " has rank " +
                                            std::to_string(r) + " > " + std::to_string(d));
    b.coeffs[r - 1] = t.coeff;
  }
  return b;
}

Polynomial from_bounded(const BoundedPoly& b, const RingPtr& ring) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < b.coeffs.size(); ++k)
    if (b.coeffs[k] != 0) terms.push_back({monomial_unrank(k + 1, ring->nvars()), b.coeffs[k]});
  return Polynomial::from_terms(ring, std::move(terms));
}

Polynomial base_change(const Polynomial& f, const RingPtr& target) {
  if (target->nvars() != f.ring()->nvars()) throw InputError("RingMismatch", "base change target has a different arity");
  std::vector<Term> terms;
  terms.reserve(f.num_terms());
  for (const auto& t : f.terms()) terms.push_back({t.monomial, target->field().normalize(t.coeff)});
  return Polynomial::from_terms(target, std::move(terms));
}

Polynomial base_change(const Polynomial& f, const mpz_class& p) {
  return base_change(f, f.ring()->with_field(Field::prime(p)));
}

}  // namespace hopfsmooth
