#include "hopfsmooth/monomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hopfsmooth/error.hpp"

namespace hopfsmooth {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked(u128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max())
    throw ResourceLimitExceeded("monomial rank exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

// C(a, b) with overflow detection.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    checked(r);
  }
  return static_cast<std::uint64_t>(r);
}

// Monomials in `vars` variables of total degree exactly t.
std::uint64_t count_degree(std::size_t vars, std::uint64_t t) {
  if (vars == 0) return t == 0 ? 1 : 0;
  return binomial(t + vars - 1, vars - 1);
}

std::strong_ordering grlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = lo; i < hi; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

}  // namespace

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  if (d > std::numeric_limits<std::uint32_t>::max()) throw ResourceLimitExceeded("monomial degree overflow");
  degree_ = static_cast<std::uint32_t>(d);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] + o.exps_[i];
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = o.exps_[i] - exps_[i];
  r.degree_ = o.degree_ - degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], o.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::gcd(const Monomial& o) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(exps_[i], o.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && o.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::pow(std::uint32_t e) const {
  std::vector<std::uint32_t> r(exps_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exps_[i] * e;
  return Monomial(std::move(r));
}

std::vector<std::size_t> Monomial::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0) s.push_back(i);
  return s;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
  return h;
}

MonomialOrder MonomialOrder::block(std::vector<std::size_t> sizes) {
  if (sizes.empty()) throw InputError("BadOrder", "block order needs at least one block");
  return MonomialOrder(Kind::Block, std::move(sizes));
}

MonomialOrder MonomialOrder::parse(const std::string& text, std::size_t nvars) {
  if (text == "grlex") return graded_lex();
  if (text == "lex") return lex();
  if (text.rfind("block:", 0) == 0) {
    std::size_t r = 0;
    try {
      r = static_cast<std::size_t>(std::stoul(text.substr(6)));
    } catch (...) {
      throw InputError("BadOrder", "bad block order '" + text + "'");
    }
    if (r == 0 || r >= nvars) throw InputError("BadOrder", "block split must satisfy 0 < r < " + std::to_string(nvars));
    return block({r, nvars - r});
  }
  throw InputError("BadOrder", "unknown monomial order '" + text + "'");
}

void MonomialOrder::check_arity(std::size_t nvars) const {
  if (kind_ != Kind::Block) return;
  if (std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}) != nvars)
    throw InputError("BadOrder", "block sizes do not cover the " + std::to_string(nvars) + " variables");
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.size() != b.size()) throw InputError("DimensionMismatch", "monomials from rings of different arity");
  switch (kind_) {
    case Kind::GradedLex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::Block: {
      std::size_t lo = 0;
      for (std::size_t sz : blocks_) {
        auto c = grlex_range(a, b, lo, lo + sz);
        if (c != 0) return c;
        lo += sz;
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::GradedLex: return "grlex";
    case Kind::Lex: return "lex";
    case Kind::Block: {
      std::string s = "block";
      for (auto b : blocks_) s += ":" + std::to_string(b);
      return s;
    }
  }
  return "?";
}

std::uint64_t monomials_up_to_degree(std::size_t nvars, std::uint32_t t) {
  return binomial(static_cast<std::uint64_t>(t) + nvars, nvars);
}

std::uint64_t monomial_rank(const Monomial& m) {
  const std::size_t n = m.size();
  const std::uint64_t t = m.degree();
  u128 rank = t == 0 ? 0 : monomials_up_to_degree(n, static_cast<std::uint32_t>(t - 1));
  // Count degree-t monomials that are lex-smaller than m.
  std::uint64_t remaining = t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t e = 0; e < m[i]; ++e) rank += count_degree(n - i - 1, remaining - e);
    remaining -= m[i];
  }
  return checked(rank + 1);
}

Monomial monomial_unrank(std::uint64_t k, std::size_t nvars) {
  if (k == 0) throw InputError("BadRank", "monomial ranks start at 1");
  if (nvars == 0) {
    if (k != 1) throw InputError("BadRank", "only one monomial in zero variables");
    return Monomial(0);
  }
  std::uint64_t t = 0;
  std::uint64_t below = 0;
  while (true) {
    std::uint64_t c = count_degree(nvars, t);
    if (k - below <= c) break;
    below += c;
    ++t;
  }
  std::uint64_t pos = k - below - 1;  // 0-based among degree-t monomials, lex ascending
  std::vector<std::uint32_t> e(nvars, 0);
  std::uint64_t remaining = t;
  for (std::size_t i = 0; i + 1 < nvars; ++i) {
    std::uint64_t ei = 0;
    while (true) {
      std::uint64_t c = count_degree(nvars - i - 1, remaining - ei);
      if (pos < c) break;
      pos -= c;
      ++ei;
    }
    e[i] = static_cast<std::uint32_t>(ei);
    remaining -= ei;
  }
  e[nvars - 1] = static_cast<std::uint32_t>(remaining);
  return Monomial(std::move(e));
}

}  // namespace hopfsmooth
