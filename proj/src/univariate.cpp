#include "hopfsmooth/univariate.hpp"

#include <algorithm>

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r = a % p;
  if (r < 0) r += p;
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw InvariantViolation("NotInvertible", "leading coefficient not invertible mod " + p.get_str());
  return r;
}

}  // namespace

ModPoly::ModPoly(mpz_class p, std::vector<mpz_class> coeffs) : p_(std::move(p)), c_(std::move(coeffs)) {
  for (auto& c : c_) c = mod(c, p_);
  trim();
}

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
  ModPoly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    mpz_class v = (i < c_.size() ? c_[i] : mpz_class(0)) + (i < o.c_.size() ? o.c_[i] : mpz_class(0));
    if (v >= p_) v -= p_;
    r.c_[i] = v;
  }
  r.trim();
  return r;
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
  ModPoly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    mpz_class v = (i < c_.size() ? c_[i] : mpz_class(0)) - (i < o.c_.size() ? o.c_[i] : mpz_class(0));
    if (v < 0) v += p_;
    r.c_[i] = v;
  }
  r.trim();
  return r;
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(p_);
  ModPoly r(p_);
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  for (auto& c : r.c_) c = mod(c, p_);
  r.trim();
  return r;
}

ModPoly ModPoly::scale(const mpz_class& s) const {
  ModPoly r(p_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(mod(c * s, p_));
  r.trim();
  return r;
}

ModPoly ModPoly::monic() const {
  if (is_zero() || lead() == 1) return *this;
  return scale(inverse_mod(lead(), p_));
}

ModPoly ModPoly::derivative() const {
  ModPoly r(p_);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(mod(c_[i] * static_cast<unsigned long>(i), p_));
  r.trim();
  return r;
}

std::pair<ModPoly, ModPoly> ModPoly::divrem(const ModPoly& o) const {
  if (o.is_zero()) throw InvariantViolation("DivisionByZero", "polynomial division by zero");
  ModPoly q(p_), r = *this;
  if (r.degree() < o.degree()) return {q, r};
  q.c_.assign(static_cast<std::size_t>(r.degree() - o.degree() + 1), 0);
  mpz_class inv = inverse_mod(o.lead(), p_);
  const std::size_t dq = static_cast<std::size_t>(o.degree());
  while (!r.is_zero() && r.degree() >= o.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree()) - dq;
    mpz_class c = mod(r.lead() * inv, p_);
    q.c_[shift] = c;
    for (std::size_t j = 0; j <= dq; ++j) r.c_[shift + j] = mod(r.c_[shift + j] - c * o.c_[j], p_);
    r.trim();
  }
  q.trim();
  return {q, r};
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
  ModPoly x = a, y = b;
  while (!y.is_zero()) {
    ModPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& m) {
  ModPoly result = ModPoly::constant(m.modulus(), 1) % m;
  ModPoly b = base % m;
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), bit)) result = (result * b) % m;
  }
  return result;
}

namespace {

using Factors = std::vector<std::pair<ModPoly, unsigned>>;

void squarefree_mod(const ModPoly& f, unsigned scale, Factors& out) {
  const mpz_class& p = f.modulus();
  ModPoly c = gcd(f, f.derivative());
  ModPoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    ModPoly y = gcd(w, c);
    ModPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // Every exponent of c is a multiple of p; take the p-th root.
    if (!p.fits_ulong_p()) throw InvariantViolation("InseparableLargePrime", "unexpected p-th power");
    unsigned long pp = p.get_ui();
    std::vector<mpz_class> root;
    for (std::size_t k = 0; k * pp < c.coeffs().size(); ++k) root.push_back(c.coeffs()[k * pp]);
    squarefree_mod(ModPoly(p, root), scale * static_cast<unsigned>(pp), out);
  }
}

// Splits a squarefree monic f into products of irreducibles of equal degree.
std::vector<std::pair<ModPoly, unsigned>> distinct_degree(ModPoly f) {
  std::vector<std::pair<ModPoly, unsigned>> out;
  const mpz_class& p = f.modulus();
  ModPoly x = ModPoly::x(p);
  ModPoly h = x % f;
  unsigned i = 1;
  while (f.degree() >= 2 * static_cast<long>(i)) {
    h = powmod(h, p, f);
    ModPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

void equal_degree(const ModPoly& f, unsigned d, gmp_randclass& rng, std::vector<ModPoly>& out) {
  if (f.degree() == static_cast<long>(d)) {
    out.push_back(f.monic());
    return;
  }
  const mpz_class& p = f.modulus();
  mpz_class exponent;
  if (p != 2) {
    mpz_pow_ui(exponent.get_mpz_t(), p.get_mpz_t(), d);
    exponent = (exponent - 1) / 2;
  }
  while (true) {
    std::vector<mpz_class> coeffs;
    for (long k = 0; k < f.degree(); ++k) coeffs.push_back(rng.get_z_range(p));
    ModPoly a(p, coeffs);
    if (a.degree() < 1) continue;
    ModPoly g = gcd(f, a);
    if (g.degree() == 0) {
      ModPoly b(p);
      if (p == 2) {
        ModPoly t = a % f;
        b = t;
        for (unsigned k = 1; k < d; ++k) {
          t = (t * t) % f;
          b = b + t;
        }
      } else {
        b = powmod(a, exponent, f) - ModPoly::constant(p, 1);
      }
      g = gcd(f, b);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

bool poly_less(const ModPoly& a, const ModPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;)
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  return false;
}

}  // namespace

std::vector<std::pair<ModPoly, unsigned>> factor_mod(const ModPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw InvariantViolation("ZeroPolynomial", "cannot factor zero");
  Factors squarefree;
  if (f.degree() > 0) squarefree_mod(f.monic(), 1, squarefree);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  Factors out;
  for (const auto& [part, mult] : squarefree) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<ModPoly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& g : irreducibles) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

namespace {

long zdeg(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly primitive(ZPoly f) {
  ztrim(f);
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return f;
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

// Exact quotient over Z; false when b does not divide a.
bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
  ZPoly r = a;
  ztrim(r);
  if (r.empty()) {
    quotient.clear();
    return true;
  }
  ZPoly q(static_cast<std::size_t>(zdeg(r) - zdeg(b) + 1), 0);
  const std::size_t db = static_cast<std::size_t>(zdeg(b));
  while (!r.empty() && zdeg(r) >= zdeg(b)) {
    if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_class c = r.back() / b.back();
    std::size_t shift = static_cast<std::size_t>(zdeg(r)) - db;
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= c * b[j];
    ztrim(r);
  }
  if (!r.empty()) return false;
  ztrim(q);
  quotient = std::move(q);
  return true;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& input) {
  ZPoly f = primitive(input);
  const long n = zdeg(f);
  if (n < 1) throw InvariantViolation("ConstantPolynomial", "nothing to factor");
  if (n == 1) return {f};

  // Any factor of f, scaled by lc(f), has coefficients below |lc| * 2^n * ||f||_2.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  mpz_class bound = (root + 1) * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
  mpz_class P;
  mpz_nextprime(P.get_mpz_t(), bound.get_mpz_t());
  while (true) {
    if (f.back() % P != 0) {
      ModPoly fp(P, f);
      if (gcd(fp, fp.derivative()).degree() == 0) break;
    }
    mpz_nextprime(P.get_mpz_t(), P.get_mpz_t());
  }

  std::vector<ModPoly> local;
  for (auto& [g, m] : factor_mod(ModPoly(P, f))) local.push_back(g);
  if (local.size() > 24) throw ResourceLimitExceeded("too many modular factors for exhaustive recombination");
  if (local.size() == 1) return {f};

  const mpz_class half = P / 2;
  std::vector<ZPoly> out;
  ZPoly h = f;
  std::size_t s = 1;
  while (2 * s <= local.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ModPoly prod = ModPoly::constant(P, h.back());
      for (auto i : idx) prod = prod * local[i];
      ZPoly g;
      for (const auto& c : prod.coeffs()) g.push_back(c > half ? mpz_class(c - P) : c);
      g = primitive(g);
      ZPoly q;
      if (zdivide(h, g, q)) {
        out.push_back(g);
        h = q;
        for (std::size_t k = s; k-- > 0;) local.erase(local.begin() + static_cast<long>(idx[k]));
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == local.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(h) > 0) out.push_back(primitive(h));
  return out;
}

}  // namespace hopfsmooth
