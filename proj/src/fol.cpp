#include "hopfsmooth/fol.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/linalg.hpp"

namespace hopfsmooth::fol {

namespace {

constexpr std::size_t kMaxPrinted = std::size_t{64} << 20;
constexpr std::size_t kMaxNodes = 20'000'000;
constexpr std::size_t kMaxUnknowns = 60'000;

[[noreturn]] void too_large(const std::string& what) {
  throw ResourceLimitExceeded("FormulaTooLarge: " + what);
}

[[noreturn]] void out_of_range(const std::string& what) { throw InputError("ParameterOutOfRange", what); }

struct Interner {
  std::mutex mu;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::deque<std::string> names;
};

Interner& interner() {
  static Interner in;
  return in;
}

Term make_term(TermNode::Kind kind, std::vector<Term> args) {
  auto t = std::make_shared<TermNode>();
  t->kind = kind;
  t->args = std::move(args);
  return t;
}

NodePtr make_node(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

}  // namespace

std::uint32_t intern(const std::string& name) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.ids.find(name);
  if (it != in.ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(in.names.size());
  in.names.push_back(name);
  in.ids.emplace(name, id);
  return id;
}

const std::string& name_of(std::uint32_t id) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  return in.names.at(id);
}

// ---------------------------------------------------------------- terms

Term constant(const Coeff& c) {
  if (c < 0) return negate(constant(-c));
  auto t = std::make_shared<TermNode>();
  t->kind = TermNode::Kind::Const;
  t->value = c;
  return t;
}

Term variable(const std::string& name) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermNode::Kind::Var;
  t->var = intern(name);
  return t;
}

bool is_zero_term(const Term& t) { return t->kind == TermNode::Kind::Const && t->value == 0; }

Term sum(std::vector<Term> xs) {
  std::erase_if(xs, is_zero_term);
  if (xs.empty()) return constant(0);
  if (xs.size() == 1) return xs.front();
  return make_term(TermNode::Kind::Add, std::move(xs));
}

Term product(std::vector<Term> xs) {
  Coeff c = 1;
  bool negative = false;
  std::vector<Term> rest;
  for (auto& x : xs) {
    const TermNode* t = x.get();
    bool neg = false;
    if (t->kind == TermNode::Kind::Neg && t->args[0]->kind == TermNode::Kind::Const) {
      neg = true;
      t = t->args[0].get();
    }
    if (t->kind == TermNode::Kind::Const) {
      c *= t->value;
      negative ^= neg;
    } else {
      rest.push_back(std::move(x));
    }
  }
  if (c == 0) return constant(0);
  if (c != 1) rest.insert(rest.begin(), constant(c));
  Term out = rest.empty() ? constant(1) : rest.size() == 1 ? rest.front() : make_term(TermNode::Kind::Mul, std::move(rest));
  return negative ? negate(out) : out;
}

Term negate(Term x) {
  if (is_zero_term(x)) return x;
  return make_term(TermNode::Kind::Neg, {std::move(x)});
}

// ---------------------------------------------------------------- nodes

NodePtr truth(bool value) {
  static const NodePtr t = make_node(NodeKind::True), f = make_node(NodeKind::False);
  return value ? t : f;
}

NodePtr atom(Term t) {
  if (is_zero_term(t)) return truth(true);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Atom;
  n->term = std::move(t);
  return n;
}

NodePtr negation(NodePtr f) {
  if (f->kind == NodeKind::True) return truth(false);
  if (f->kind == NodeKind::False) return truth(true);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Not;
  n->children.push_back(std::move(f));
  return n;
}

NodePtr conj(std::vector<NodePtr> fs) {
  std::vector<NodePtr> keep;
  for (auto& f : fs) {
    if (f->kind == NodeKind::False) return truth(false);
    if (f->kind != NodeKind::True) keep.push_back(std::move(f));
  }
  if (keep.empty()) return truth(true);
  if (keep.size() == 1) return keep.front();
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::And;
  n->children = std::move(keep);
  return n;
}

NodePtr disj(std::vector<NodePtr> fs) {
  std::vector<NodePtr> keep;
  for (auto& f : fs) {
    if (f->kind == NodeKind::True) return truth(true);
    if (f->kind != NodeKind::False) keep.push_back(std::move(f));
  }
  if (keep.empty()) return truth(false);
  if (keep.size() == 1) return keep.front();
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Or;
  n->children = std::move(keep);
  return n;
}

namespace {

NodePtr quantifier(NodeKind kind, const std::vector<std::string>& vars, NodePtr body) {
  if (vars.empty()) return body;
  auto n = std::make_shared<Node>();
  n->kind = kind;
  for (const auto& v : vars) n->bound.push_back(intern(v));
  n->children.push_back(std::move(body));
  return n;
}

}  // namespace

NodePtr exists(const std::vector<std::string>& vars, NodePtr body) {
  return quantifier(NodeKind::Exists, vars, std::move(body));
}

NodePtr forall(const std::vector<std::string>& vars, NodePtr body) {
  return quantifier(NodeKind::Forall, vars, std::move(body));
}

NodePtr lazy(std::function<NodePtr()> thunk) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Lazy;
  n->thunk = std::move(thunk);
  return n;
}

NodePtr lazy_or(std::size_t count, MemberFn member) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::LazyOr;
  n->count = count;
  n->member = std::move(member);
  return n;
}

// ---------------------------------------------------------------- symbolic polynomials

namespace {

// Polynomial with term coefficients, keyed by graded-lex rank.
using Sym = std::map<std::uint64_t, Term>;

struct Acc {
  std::map<std::uint64_t, std::vector<Term>> parts;
  void add(std::uint64_t key, Term t) {
    if (!is_zero_term(t)) parts[key].push_back(std::move(t));
  }
  Sym done() {
    Sym s;
    for (auto& [k, v] : parts) {
      Term t = sum(std::move(v));
      if (!is_zero_term(t)) s.emplace(k, std::move(t));
    }
    return s;
  }
};

std::uint64_t mul_rank(std::uint64_t a, std::uint64_t b, std::size_t n) {
  return monomial_rank(monomial_unrank(a, n) * monomial_unrank(b, n));
}

Term coef(const Sym& p, std::uint64_t k) {
  auto it = p.find(k);
  return it == p.end() ? constant(0) : it->second;
}

Sym sym_add(const Sym& p, const Sym& q, bool subtract = false) {
  Acc acc;
  for (const auto& [k, t] : p) acc.add(k, t);
  for (const auto& [k, t] : q) acc.add(k, subtract ? negate(t) : t);
  return acc.done();
}

Sym sym_mul(const Sym& p, const Sym& q, std::size_t n) {
  Acc acc;
  for (const auto& [a, s] : p)
    for (const auto& [b, t] : q) acc.add(mul_rank(a, b, n), product({s, t}));
  return acc.done();
}

Sym sym_times(const Sym& p, const Monomial& m, const Term& c) {
  Sym s;
  for (const auto& [k, t] : p) {
    Term v = product({c, t});
    if (!is_zero_term(v)) s.emplace(monomial_rank(monomial_unrank(k, m.size()) * m), std::move(v));
  }
  return s;
}

Sym sym_one() { return {{1, constant(1)}}; }

Sym sym_const(Term t) {
  if (is_zero_term(t)) return {};
  return {{1, std::move(t)}};
}

Sym sym_var(std::size_t n, std::size_t l) { return {{monomial_rank(Monomial::variable(n, l)), constant(1)}}; }

// Algebra map x_l -> images[l] (each over n_tgt variables).
Sym sym_substitute(const Sym& p, std::size_t n_src, const std::vector<Sym>& images, std::size_t n_tgt) {
  std::vector<std::vector<Sym>> powers(n_src, std::vector<Sym>{sym_one()});
  auto power = [&](std::size_t l, std::uint32_t e) -> const Sym& {
    while (powers[l].size() <= e) powers[l].push_back(sym_mul(powers[l].back(), images[l], n_tgt));
    return powers[l][e];
  };
  Acc acc;
  for (const auto& [k, t] : p) {
    Monomial m = monomial_unrank(k, n_src);
    Sym v = sym_const(t);
    for (std::size_t l = 0; l < n_src && !v.empty(); ++l)
      if (m[l] > 0) v = sym_mul(v, power(l, m[l]), n_tgt);
    for (auto& [key, c] : v) acc.add(key, c);
  }
  return acc.done();
}

// Moves p into n_tgt variables, variable l going to target[l].
Sym sym_embed(const Sym& p, std::size_t n_src, std::size_t n_tgt, const std::vector<std::size_t>& target) {
  Sym s;
  for (const auto& [k, t] : p) {
    Monomial m = monomial_unrank(k, n_src);
    std::vector<std::uint32_t> e(n_tgt, 0);
    for (std::size_t l = 0; l < n_src; ++l) e[target[l]] = m[l];
    s.emplace(monomial_rank(Monomial(std::move(e))), t);
  }
  return s;
}

std::vector<std::size_t> copy_targets(std::size_t n, std::size_t copy) {
  std::vector<std::size_t> t(n);
  for (std::size_t l = 0; l < n; ++l) t[l] = copy * n + l;
  return t;
}

std::uint32_t max_degree(const Sym& p, std::size_t n) {
  std::uint32_t D = 0;
  for (const auto& [k, t] : p) D = std::max(D, monomial_unrank(k, n).degree());
  return D;
}

std::string name(const std::string& head, const std::vector<std::size_t>& idx) {
  std::string s = head;
  const bool sep = !head.empty() && std::isdigit(static_cast<unsigned char>(head.back()));
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i || sep ? "_" : "") + std::to_string(idx[i]);
  return s;
}

// ---------------------------------------------------------------- building blocks

struct Data {
  std::size_t d = 0, n = 0;
  std::vector<Sym> G;  // the basis, g_i = sum_j g{i}_{j} m_j
  std::vector<std::vector<NodePtr>> phis;  // phis[i][a]
};
using DataPtr = std::shared_ptr<const Data>;

// φ_{e,D}: in(p) = m_e, or p = 0 when e = 0.
NodePtr phi_node(const Sym& p, std::size_t e, std::size_t D) {
  std::vector<NodePtr> cs;
  if (e > 0) cs.push_back(negation(atom(coef(p, e))));
  for (std::size_t k = e + 1; k <= D; ++k) cs.push_back(atom(coef(p, k)));
  return conj(std::move(cs));
}

Sym slots(const std::string& head, std::vector<std::size_t> prefix, std::size_t d) {
  Sym s;
  prefix.push_back(0);
  for (std::size_t j = 1; j <= d; ++j) {
    prefix.back() = j;
    s.emplace(j, variable(name(head, prefix)));
  }
  return s;
}

DataPtr basis_data(std::size_t d, std::size_t n) {
  auto D = std::make_shared<Data>();
  D->d = d;
  D->n = n;
  for (std::size_t i = 1; i <= d; ++i) D->G.push_back(slots("g", {i}, d));
  D->phis.resize(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a <= d; ++a) D->phis[i].push_back(phi_node(D->G[i], a, d));
  return D;
}

std::vector<FreeVar> basis_vars(std::size_t d) {
  std::vector<FreeVar> out;
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) out.push_back({name("g", {i, j}), "B", {i, j}});
  return out;
}

// ∃ cofactors q_u with target = Σ q_u basis_u, every q_u of degree at most
// the degree of the target. Exact for Gröbner bases (standard representations).
NodePtr membership(const std::string& scope, const Sym& target, const std::vector<Sym>& basis, std::size_t n) {
  if (target.empty()) return truth(true);
  const std::uint32_t D = max_degree(target, n);
  const std::uint64_t K = monomials_up_to_degree(n, D);
  if (K * basis.size() > kMaxUnknowns)
    too_large("membership block with " + std::to_string(K * basis.size()) + " unknowns");
  std::vector<std::string> vars;
  Acc rhs;
  for (std::size_t u = 0; u < basis.size(); ++u)
    for (std::uint64_t k = 1; k <= K; ++k) {
      vars.push_back(name(scope, {u + 1, k}));
      Term lam = variable(vars.back());
      for (const auto& [key, c] : basis[u]) rhs.add(mul_rank(k, key, n), product({lam, c}));
    }
  Sym r = rhs.done();
  std::set<std::uint64_t> keys;
  for (const auto& [k, t] : target) keys.insert(k);
  for (const auto& [k, t] : r) keys.insert(k);
  std::vector<NodePtr> atoms;
  for (auto k : keys) atoms.push_back(atom(sum({coef(target, k), negate(coef(r, k))})));
  return exists(vars, conj(std::move(atoms)));
}

// χ_{e,a,b}: S has a standard representation with in(q_u g_u) <= m_e. The
// bound on each product is imposed by equations on its coefficients above m_e.
NodePtr standard_representation(const std::string& scope, const Sym& S, std::size_t e, const Data& D) {
  std::vector<std::string> vars;
  std::vector<Sym> parts;
  for (std::size_t u = 0; u < D.d; ++u) {
    Acc acc;
    for (std::size_t k = 1; k <= e; ++k) {
      vars.push_back(name(scope, {u + 1, k}));
      Term lam = variable(vars.back());
      for (const auto& [key, c] : D.G[u]) acc.add(mul_rank(k, key, D.n), product({lam, c}));
    }
    parts.push_back(acc.done());
  }
  std::set<std::uint64_t> keys;
  for (const auto& [k, t] : S) keys.insert(k);
  for (const auto& p : parts)
    for (const auto& [k, t] : p) keys.insert(k);
  std::vector<NodePtr> atoms;
  for (auto k : keys) {
    if (k <= e) {
      std::vector<Term> xs{coef(S, k)};
      for (const auto& p : parts) xs.push_back(negate(coef(p, k)));
      atoms.push_back(atom(sum(std::move(xs))));
    } else {
      for (const auto& p : parts) atoms.push_back(atom(coef(p, k)));
    }
  }
  return exists(vars, conj(std::move(atoms)));
}

// χ_{a,b}(g_i, g_j) given in(g_i) = m_a and in(g_j) = m_b.
NodePtr chi(const DataPtr& D, std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
  const std::size_t n = D->n;
  Monomial ma = monomial_unrank(a, n), mb = monomial_unrank(b, n);
  Monomial g = ma.gcd(mb);
  Monomial m12 = g.quotient_of(ma), m21 = g.quotient_of(mb);
  Term lci = variable(name("g", {i + 1, a})), lcj = variable(name("g", {j + 1, b}));
  Sym S = sym_add(sym_times(D->G[i], m21, lcj), sym_times(D->G[j], m12, lci), true);
  const std::uint64_t L = monomial_rank(ma.lcm(mb));
  std::size_t top = S.empty() ? 0 : static_cast<std::size_t>(S.rbegin()->first);
  std::vector<NodePtr> alts{phi_node(S, 0, top)};
  const std::string scope = name("y", {i + 1, j + 1, a, b});
  for (std::size_t e = 1; e < L; ++e)
    alts.push_back(conj({phi_node(S, e, top), lazy([D, S, e, scope] {
                           return standard_representation(scope + "_" + std::to_string(e), S, e, *D);
                         })}));
  return disj(std::move(alts));
}

NodePtr beta_root(const DataPtr& D) {
  const std::size_t d = D->d;
  std::vector<NodePtr> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<NodePtr> alts;
      for (std::size_t a = 0; a <= d; ++a)
        for (std::size_t b = 0; b <= d; ++b) {
          NodePtr c = (a == 0 || b == 0) ? truth(true) : lazy([D, i, j, a, b] { return chi(D, i, j, a, b); });
          alts.push_back(conj({D->phis[i][a], D->phis[j][b], c}));
        }
      pairs.push_back(disj(std::move(alts)));
    }
  return conj(std::move(pairs));
}

// Krull dimension of the monomial ideal with the given supports (-1 for (1)).
int monomial_dimension(const std::vector<std::uint64_t>& supports, std::size_t n) {
  for (auto s : supports)
    if (s == 0) return -1;
  int best = 0;
  for (std::uint64_t X = 0; X < (std::uint64_t{1} << n); ++X) {
    bool free = true;
    for (auto s : supports) free = free && (s & ~X) != 0;
    if (free) best = std::max(best, std::popcount(X));
  }
  return best;
}

NodePtr delta_root(const DataPtr& D, std::size_t e) {
  const std::size_t d = D->d, n = D->n;
  if (n >= 63) out_of_range("too many variables for the dimension formula");
  std::vector<std::uint64_t> support(d + 1, 0);
  for (std::size_t a = 1; a <= d; ++a)
    for (auto l : monomial_unrank(a, n).support()) support[a] |= std::uint64_t{1} << l;
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (count > kMaxNodes) too_large("delta disjunction over more than " + std::to_string(kMaxNodes) + " lists");
    count *= d + 1;
  }
  return lazy_or(count, [D, e, support](std::size_t idx, std::vector<NodePtr>& out) {
    const std::size_t d = D->d;
    std::vector<std::uint64_t> used;
    std::vector<std::size_t> a(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = idx % (d + 1);
      idx /= d + 1;
      if (a[i] > 0) used.push_back(support[a[i]]);
    }
    if (monomial_dimension(used, D->n) != static_cast<int>(e)) return false;
    out.clear();
    for (std::size_t i = 0; i < d; ++i) out.push_back(D->phis[i][a[i]]);
    return true;
  });
}

Term determinant(const std::vector<std::vector<Term>>& J, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    std::size_t inversions = 0;
    for (std::size_t x = 0; x < perm.size(); ++x)
      for (std::size_t y = x + 1; y < perm.size(); ++y) inversions += perm[x] > perm[y] ? 1 : 0;
    std::vector<Term> fs;
    for (std::size_t x = 0; x < rows.size(); ++x) fs.push_back(J[rows[x]][cols[perm[x]]]);
    Term t = product(std::move(fs));
    terms.push_back(inversions % 2 ? negate(t) : t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum(std::move(terms));
}

void subsets(std::size_t n, std::size_t r, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      go(i + 1);
      cur.pop_back();
    }
  };
  go(0);
}

// All r x r minors of J.
std::vector<Term> minors(const std::vector<std::vector<Term>>& J, std::size_t d, std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(d, r, rs);
  subsets(n, r, cs);
  if (rs.size() * cs.size() > kMaxUnknowns) too_large("Jacobian rank condition with too many minors");
  std::vector<Term> out;
  for (const auto& rows : rs)
    for (const auto& cols : cs) out.push_back(determinant(J, rows, cols));
  return out;
}

// nullity of (ε(∂g_k/∂x_l)) equals e
NodePtr tau_root(const DataPtr& D, std::size_t e, const std::vector<Term>& eps) {
  const std::size_t d = D->d, n = D->n;
  if (e > n) return truth(false);
  const std::size_t r = n - e;
  if (r > std::min(d, n)) return truth(false);
  std::vector<std::vector<Term>> J(d, std::vector<Term>(n));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<Term> parts;
      for (std::size_t j = 1; j <= d; ++j) {
        Monomial m = monomial_unrank(j, n);
        if (m[l] == 0) continue;
        std::vector<Term> fs{constant(m[l]), coef(D->G[k], j)};
        for (std::size_t t = 0; t < n; ++t)
          for (std::uint32_t p = 0; p < m[t] - (t == l ? 1 : 0); ++p) fs.push_back(eps[t]);
        parts.push_back(product(std::move(fs)));
      }
      J[k][l] = sum(std::move(parts));
    }
  std::vector<NodePtr> at_least, at_most;
  if (r > 0)
    for (auto& m : minors(J, d, n, r)) at_least.push_back(negation(atom(m)));
  if (r < std::min(d, n))
    for (auto& m : minors(J, d, n, r + 1)) at_most.push_back(atom(m));
  return conj({r > 0 ? disj(std::move(at_least)) : truth(true), conj(std::move(at_most))});
}

NodePtr theta_root(const DataPtr& D, const std::vector<Term>& eps) {
  std::vector<NodePtr> alts;
  for (std::size_t e = 0; e <= D->n; ++e) alts.push_back(conj({delta_root(D, e), tau_root(D, e, eps)}));
  return disj(std::move(alts));
}

// Λ(x_i) = Σ L{i}_{j_1.._j_r} m_{j_1} ⊗ .. ⊗ m_{j_r} over n*r variables.
std::vector<Sym> hom_syms(const std::string& head, std::size_t d, std::size_t n, std::size_t r) {
  std::vector<Sym> out;
  std::size_t count = 1;
  for (std::size_t c = 0; c < r; ++c) count *= d;
  for (std::size_t i = 1; i <= n; ++i) {
    Sym s;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<std::size_t> js(r);
      std::vector<std::uint32_t> e;
      std::size_t rest = idx;
      for (std::size_t c = r; c-- > 0;) {
        js[c] = rest % d + 1;
        rest /= d;
      }
      for (std::size_t c = 0; c < r; ++c) {
        Monomial m = monomial_unrank(js[c], n);
        e.insert(e.end(), m.exponents().begin(), m.exponents().end());
      }
      std::vector<std::size_t> index{i};
      index.insert(index.end(), js.begin(), js.end());
      s.emplace(monomial_rank(Monomial(std::move(e))), variable(name(head, index)));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FreeVar> hom_vars(const std::string& head, const std::string& object, std::size_t d, std::size_t n,
                              std::size_t r) {
  std::vector<FreeVar> out;
  std::size_t count = 1;
  for (std::size_t c = 0; c < r; ++c) count *= d;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<std::size_t> index{i};
      std::size_t rest = idx;
      std::vector<std::size_t> js(r);
      for (std::size_t c = r; c-- > 0;) {
        js[c] = rest % d + 1;
        rest /= d;
      }
      index.insert(index.end(), js.begin(), js.end());
      out.push_back({name(head, index), object, index});
    }
  return out;
}

std::vector<Sym> tensor_basis(const Data& D, std::size_t r) {
  std::vector<Sym> out;
  for (std::size_t c = 0; c < r; ++c)
    for (const auto& g : D.G) out.push_back(sym_embed(g, D.n, D.n * r, copy_targets(D.n, c)));
  return out;
}

Term at_point(const Sym& p, std::size_t n, const std::vector<Term>& point) {
  std::vector<Term> parts;
  for (const auto& [k, t] : p) {
    Monomial m = monomial_unrank(k, n);
    std::vector<Term> fs{t};
    for (std::size_t l = 0; l < n; ++l)
      for (std::uint32_t e = 0; e < m[l]; ++e) fs.push_back(point[l]);
    parts.push_back(product(std::move(fs)));
  }
  return sum(std::move(parts));
}

// Λ factors through S/I -> (S/I)^{⊗r}: Λ(g_i) ∈ J_r for every basis element.
NodePtr zeta_root(const DataPtr& D, const std::string& scope, const std::vector<Sym>& images,
                  const std::vector<Term>& point, std::size_t r) {
  std::vector<NodePtr> cs;
  for (std::size_t i = 0; i < D->d; ++i) {
    if (r == 0) {
      cs.push_back(atom(at_point(D->G[i], D->n, point)));
      continue;
    }
    cs.push_back(lazy([D, scope, images, r, i] {
      const std::size_t nr = D->n * r;
      Sym target = sym_substitute(D->G[i], D->n, images, nr);
      return membership(name(scope, {i + 1}), target, tensor_basis(*D, r), nr);
    }));
  }
  return conj(std::move(cs));
}

NodePtr eta_root(const DataPtr& D, const std::vector<Sym>& comul, const std::vector<Sym>& antipode,
                 const std::vector<Term>& eps) {
  const std::size_t n = D->n;
  std::vector<NodePtr> cs{zeta_root(D, "zc", comul, {}, 2), zeta_root(D, "za", antipode, {}, 1),
                          zeta_root(D, "ze", {}, eps, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    cs.push_back(lazy([D, comul, i] {
      const std::size_t n = D->n;
      std::vector<Sym> left, right;
      for (std::size_t l = 0; l < n; ++l) left.push_back(sym_embed(comul[l], 2 * n, 3 * n, [&] {
        auto t = copy_targets(n, 0);
        auto u = copy_targets(n, 1);
        t.insert(t.end(), u.begin(), u.end());
        return t;
      }()));
      for (std::size_t l = 0; l < n; ++l) left.push_back(sym_var(3 * n, 2 * n + l));
      for (std::size_t l = 0; l < n; ++l) right.push_back(sym_var(3 * n, l));
      for (std::size_t l = 0; l < n; ++l) right.push_back(sym_embed(comul[l], 2 * n, 3 * n, [&] {
        auto t = copy_targets(n, 1);
        auto u = copy_targets(n, 2);
        t.insert(t.end(), u.begin(), u.end());
        return t;
      }()));
      Sym diff = sym_add(sym_substitute(comul[i], 2 * n, left, 3 * n), sym_substitute(comul[i], 2 * n, right, 3 * n), true);
      return membership(name("h", {1, i + 1}), diff, tensor_basis(*D, 3), 3 * n);
    }));
  }
  std::vector<Sym> xs, es;
  for (std::size_t l = 0; l < n; ++l) {
    xs.push_back(sym_var(n, l));
    es.push_back(sym_const(eps[l]));
  }
  auto two = [](std::vector<Sym> a, const std::vector<Sym>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  // Counit and antipode identities, each on both sides.
  const std::vector<std::pair<std::vector<Sym>, bool>> sides{
      {two(es, xs), false}, {two(xs, es), false}, {two(antipode, xs), true}, {two(xs, antipode), true}};
  for (std::size_t s = 0; s < sides.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) {
      auto images = sides[s].first;
      bool to_counit = sides[s].second;
      cs.push_back(lazy([D, comul, images, to_counit, eps, xs, i, s] {
        const std::size_t n = D->n;
        Sym lhs = sym_substitute(comul[i], 2 * n, images, n);
        Sym rhs = to_counit ? sym_const(eps[i]) : xs[i];
        return membership(name("h", {s + 2, i + 1}), sym_add(lhs, rhs, true), D->G, n);
      }));
    }
  return conj(std::move(cs));
}

std::vector<Term> counit_terms(std::size_t n, const std::vector<Coeff>& counit) {
  if (!counit.empty() && counit.size() != n) throw InputError("ArityMismatch", "counit needs one value per variable");
  std::vector<Term> eps;
  for (std::size_t l = 0; l < n; ++l) eps.push_back(constant(counit.empty() ? Coeff(0) : counit[l]));
  return eps;
}

void check_d(std::size_t d, std::size_t n) {
  if (d == 0) out_of_range("d must be at least 1");
  if (n == 0) out_of_range("n must be at least 1");
}

Formula wrap(NodePtr root, std::vector<FreeVar> free, std::size_t n, std::size_t d, const FormulaKind& kind) {
  return {std::move(root), std::move(free), n, d, to_string(kind)};
}

}  // namespace

// ---------------------------------------------------------------- builders

Formula phi(std::size_t e, std::size_t d, std::size_t n) {
  check_d(d, n);
  if (e > d) out_of_range("phi needs e <= d");
  Sym f = slots("l", {}, d);
  std::vector<FreeVar> free;
  for (std::size_t j = 1; j <= d; ++j) free.push_back({name("l", {j}), "f", {j}});
  return wrap(phi_node(f, e, d), std::move(free), n, d, {FormulaKind::Name::Phi, e, d});
}

Formula beta(std::size_t d, std::size_t n) {
  check_d(d, n);
  return wrap(beta_root(basis_data(d, n)), basis_vars(d), n, d, {FormulaKind::Name::Beta, d});
}

Formula delta(std::size_t e, std::size_t d, std::size_t n) {
  check_d(d, n);
  if (e > std::max(d, n)) out_of_range("delta needs e <= max(d, n)");
  return wrap(delta_root(basis_data(d, n), e), basis_vars(d), n, d, {FormulaKind::Name::Delta, e, d});
}

Formula iota(std::size_t d, std::size_t n) {
  check_d(d, n);
  DataPtr D = basis_data(d, n);
  auto free = basis_vars(d);
  for (std::size_t j = 1; j <= d; ++j) free.push_back({name("f", {j}), "f", {j}});
  NodePtr root = membership("q", slots("f", {}, d), D->G, n);
  return wrap(root, std::move(free), n, d, {FormulaKind::Name::Iota, d});
}

Formula zeta(std::size_t d, std::size_t r, std::size_t n) {
  check_d(d, n);
  if (r > 3) out_of_range("zeta is built for r <= 3");
  DataPtr D = basis_data(d, n);
  auto free = basis_vars(d);
  auto more = hom_vars("L", "Lambda", d, n, r);
  free.insert(free.end(), more.begin(), more.end());
  std::vector<Term> point;
  std::vector<Sym> images;
  if (r == 0) {
    for (std::size_t i = 1; i <= n; ++i) point.push_back(variable(name("L", {i})));
  } else {
    images = hom_syms("L", d, n, r);
  }
  return wrap(zeta_root(D, "z", images, point, r), std::move(free), n, d, {FormulaKind::Name::Zeta, d, r});
}

namespace {

struct HopfVars {
  std::vector<FreeVar> free;
  std::vector<Sym> comul, antipode;
  std::vector<Term> eps;
};

HopfVars hopf_vars(std::size_t d, std::size_t n) {
  HopfVars h;
  h.free = basis_vars(d);
  for (auto* part : {&h.free}) {
    auto c = hom_vars("D", "Delta", d, n, 2);
    auto s = hom_vars("s", "sigma", d, n, 1);
    part->insert(part->end(), c.begin(), c.end());
    part->insert(part->end(), s.begin(), s.end());
    for (std::size_t i = 1; i <= n; ++i) part->push_back({name("e", {i}), "epsilon", {i}});
  }
  h.comul = hom_syms("D", d, n, 2);
  h.antipode = hom_syms("s", d, n, 1);
  for (std::size_t i = 1; i <= n; ++i) h.eps.push_back(variable(name("e", {i})));
  return h;
}

}  // namespace

Formula eta(std::size_t d, std::size_t n) {
  check_d(d, n);
  DataPtr D = basis_data(d, n);
  HopfVars h = hopf_vars(d, n);
  return wrap(eta_root(D, h.comul, h.antipode, h.eps), std::move(h.free), n, d, {FormulaKind::Name::Eta, d});
}

Formula tau(std::size_t e, std::size_t d, std::size_t n, const std::vector<Coeff>& counit) {
  check_d(d, n);
  if (e > d) out_of_range("tau needs e <= d");
  return wrap(tau_root(basis_data(d, n), e, counit_terms(n, counit)), basis_vars(d), n, d,
              {FormulaKind::Name::Tau, e, d});
}

Formula theta(std::size_t d, std::size_t n, const std::vector<Coeff>& counit) {
  check_d(d, n);
  return wrap(theta_root(basis_data(d, n), counit_terms(n, counit)), basis_vars(d), n, d,
              {FormulaKind::Name::Theta, d});
}

Formula psi(std::size_t p) {
  if (p == 0) out_of_range("psi needs p >= 1");
  if (p > 100000) too_large("psi with more than 100000 summands");
  std::vector<Term> ones(p, constant(1));
  NodePtr root = p == 1 ? atom(ones.front()) : atom(make_term(TermNode::Kind::Add, std::move(ones)));
  return wrap(root, {}, 0, 0, {FormulaKind::Name::Psi, p});
}

Formula smoothness_sentence(std::size_t d, std::size_t n) {
  check_d(d, n);
  DataPtr D = basis_data(d, n);
  HopfVars h = hopf_vars(d, n);
  NodePtr body = disj({negation(conj({beta_root(D), eta_root(D, h.comul, h.antipode, h.eps)})), theta_root(D, h.eps)});
  std::vector<std::string> vars;
  for (const auto& v : h.free) vars.push_back(v.name);
  // The prefix has the length d^2 + n(d^2 + 2d + 1); the last nd variables
  // do not occur in the matrix.
  for (std::size_t k = 1; k <= n * d; ++k) vars.push_back(name("w", {k}));
  return wrap(forall(vars, body), {}, n, d, {FormulaKind::Name::Sentence, d});
}

Formula build(const FormulaKind& kind, std::size_t n, const std::vector<Coeff>& counit) {
  using N = FormulaKind::Name;
  switch (kind.name) {
    case N::Phi: return phi(kind.a, kind.b, n);
    case N::Beta: return beta(kind.a, n);
    case N::Delta: return delta(kind.a, kind.b, n);
    case N::Iota: return iota(kind.a, n);
    case N::Zeta: return zeta(kind.a, kind.b, n);
    case N::Eta: return eta(kind.a, n);
    case N::Tau: return tau(kind.a, kind.b, n, counit);
    case N::Theta: return theta(kind.a, n, counit);
    case N::Psi: return psi(kind.a);
    case N::Sentence: return smoothness_sentence(kind.a, n);
  }
  throw InputError("UnknownFormula", "unknown formula kind");
}

std::size_t expected_free_count(const FormulaKind& kind, std::size_t n) {
  using N = FormulaKind::Name;
  const std::size_t d = kind.name == N::Phi || kind.name == N::Delta || kind.name == N::Tau ? kind.b : kind.a;
  switch (kind.name) {
    case N::Phi: return d;
    case N::Beta:
    case N::Delta:
    case N::Tau:
    case N::Theta: return d * d;
    case N::Iota: return d * d + d;
    case N::Zeta: {
      std::size_t p = 1;
      for (std::size_t c = 0; c < kind.b; ++c) p *= d;
      return n * p + d * d;
    }
    case N::Eta: return d * d + n * (d * d + d + 1);
    case N::Psi:
    case N::Sentence: return 0;
  }
  return 0;
}

namespace {

struct KindName {
  const char* text;
  FormulaKind::Name name;
  std::size_t arity;
};

constexpr KindName kKinds[] = {
    {"phi", FormulaKind::Name::Phi, 2},     {"beta", FormulaKind::Name::Beta, 1},
    {"delta", FormulaKind::Name::Delta, 2}, {"iota", FormulaKind::Name::Iota, 1},
    {"zeta", FormulaKind::Name::Zeta, 2},   {"eta", FormulaKind::Name::Eta, 1},
    {"tau", FormulaKind::Name::Tau, 2},     {"theta", FormulaKind::Name::Theta, 1},
    {"psi", FormulaKind::Name::Psi, 1},     {"Phi", FormulaKind::Name::Sentence, 1},
};

}  // namespace

FormulaKind parse_kind(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw InputError("UnknownFormula", "expected name(args), got '" + std::string(text) + "'");
  std::string_view head = text.substr(0, open);
  std::vector<std::size_t> args;
  std::string cur;
  for (char c : text.substr(open + 1, text.size() - open - 2)) {
    if (c == ',') {
      args.push_back(cur.empty() ? throw InputError("UnknownFormula", "empty argument") : std::stoul(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (c != ' ') {
      throw InputError("UnknownFormula", "bad argument in '" + std::string(text) + "'");
    }
  }
  if (cur.empty()) throw InputError("UnknownFormula", "empty argument");
  args.push_back(std::stoul(cur));
  for (const auto& k : kKinds)
    if (head == k.text) {
      if (args.size() != k.arity)
        throw InputError("UnknownFormula", std::string(k.text) + " takes " + std::to_string(k.arity) + " arguments");
      return {k.name, args[0], k.arity > 1 ? args[1] : 0};
    }
  throw InputError("UnknownFormula", "unknown formula '" + std::string(head) + "'");
}

std::string to_string(const FormulaKind& kind) {
  for (const auto& k : kKinds)
    if (k.name == kind.name)
      return std::string(k.text) + "(" + std::to_string(kind.a) + (k.arity > 1 ? "," + std::to_string(kind.b) : "") +
             ")";
  return "?";
}

// ---------------------------------------------------------------- assignment

namespace {

using SlotTable = std::map<std::vector<std::size_t>, Coeff>;

SlotTable slot_table(const Polynomial& p, std::size_t n, std::size_t r, std::size_t d, const std::string& what) {
  if (p.ring()->nvars() != n * r)
    throw InputError("ArityMismatch", what + " lives in a ring with " + std::to_string(p.ring()->nvars()) +
                                          " variables, expected " + std::to_string(n * r));
  SlotTable t;
  for (const auto& term : p.terms()) {
    std::vector<std::size_t> key;
    for (std::size_t c = 0; c < r; ++c) {
      auto e = term.monomial.exponents().subspan(c * n, n);
      std::uint64_t k = monomial_rank(Monomial(std::vector<std::uint32_t>(e.begin(), e.end())));
      if (k > d) throw InputError("UnboundedTerm", what + " is not " + std::to_string(d) + "-bounded");
      key.push_back(static_cast<std::size_t>(k));
    }
    t[key] = term.coeff;
  }
  return t;
}

}  // namespace

Assignment assign(const Formula& F, const Instance& data) {
  if (!data.ring) throw InputError("MissingData", "instance has no ring");
  const Field& k = data.ring->field();
  const std::size_t n = F.n, d = F.d;
  if (!F.free.empty() && data.ring->nvars() != n)
    throw InputError("ArityMismatch", "formula is over " + std::to_string(n) + " variables");
  if (data.basis.size() > d) throw InputError("UnboundedTerm", "basis has more than d elements");
  Assignment a{k, {}};
  std::map<std::pair<std::string, std::size_t>, SlotTable> tables;
  auto table = [&](const std::string& obj, std::size_t i, std::size_t r) -> const SlotTable& {
    auto key = std::make_pair(obj, i);
    auto it = tables.find(key);
    if (it != tables.end()) return it->second;
    const Polynomial* p = nullptr;
    static const SlotTable empty;
    if (obj == "B") {
      if (i > data.basis.size()) return empty;
      p = &data.basis[i - 1];
    } else if (obj == "f") {
      if (!data.f) throw InputError("MissingData", "instance has no polynomial f");
      p = &*data.f;
    } else {
      const auto& src = obj == "Lambda" ? data.hom : obj == "Delta" ? data.comul : data.antipode;
      if (i > src.size()) throw InputError("MissingData", "instance has no " + obj + " image for variable " + std::to_string(i));
      p = &src[i - 1];
    }
    return tables.emplace(key, slot_table(*p, n, r, d, obj)).first->second;
  };
  for (const auto& v : F.free) {
    Coeff value = 0;
    if (v.object == "epsilon" || (v.object == "Lambda" && v.index.size() == 1)) {
      if (v.index[0] > data.counit.size()) throw InputError("MissingData", "instance has no counit");
      value = data.counit[v.index[0] - 1];
    } else {
      std::size_t i = v.object == "f" ? 0 : v.index[0];
      std::vector<std::size_t> key(v.index.begin() + (v.object == "f" ? 0 : 1), v.index.end());
      const auto& t = table(v.object, i, key.size());
      auto it = t.find(key);
      if (it != t.end()) value = it->second;
    }
    a.values[v.name] = k.normalize(value);
  }
  return a;
}

// ---------------------------------------------------------------- evaluation

namespace {

[[noreturn]] void unsupported(const std::string& what) { throw InputError("UnsupportedQuantifierShape", what); }

struct Affine {
  Coeff c;
  std::vector<std::pair<std::size_t, Coeff>> lin;  // sorted by index
};

class Evaluator {
 public:
  Evaluator(const Assignment& a) : k_(a.field) {
    for (const auto& [name, v] : a.values) env_[intern(name)] = k_.normalize(v);
  }

  bool eval(const NodePtr& f) {
    switch (f->kind) {
      case NodeKind::True: return true;
      case NodeKind::False: return false;
      case NodeKind::Atom: return value(f->term) == 0;
      default: break;
    }
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    bool r = compute(f);
    memo_.emplace(f.get(), r);
    return r;
  }

 private:
  bool compute(const NodePtr& f) {
    switch (f->kind) {
      case NodeKind::Not: return !eval(f->children[0]);
      case NodeKind::And:
        for (const auto& c : f->children)
          if (!eval(c)) return false;
        return true;
      case NodeKind::Or:
        for (const auto& c : f->children)
          if (eval(c)) return true;
        return false;
      case NodeKind::Forall: unsupported("universal quantifiers are not evaluated");
      case NodeKind::Exists: return block(*f);
      case NodeKind::Lazy: {
        NodePtr g = f->thunk();
        keep_.push_back(g);
        return eval(g);
      }
      case NodeKind::LazyOr: {
        std::vector<NodePtr> cs;
        for (std::size_t i = 0; i < f->count; ++i) {
          if (!f->member(i, cs)) continue;
          bool all = true;
          for (const auto& c : cs)
            if (!(all = eval(c))) break;
          if (all) return true;
        }
        return false;
      }
      default: return eval(f);
    }
  }

  Coeff value(const Term& t) {
    switch (t->kind) {
      case TermNode::Kind::Const: return k_.normalize(t->value);
      case TermNode::Kind::Var: {
        auto it = env_.find(t->var);
        if (it == env_.end()) throw InputError("UnboundVariable", "no value for " + name_of(t->var));
        return it->second;
      }
      case TermNode::Kind::Neg: return k_.neg(value(t->args[0]));
      case TermNode::Kind::Add: {
        Coeff s = 0;
        for (const auto& a : t->args) s = k_.add(s, value(a));
        return s;
      }
      case TermNode::Kind::Mul: {
        Coeff p = 1;
        for (const auto& a : t->args) {
          p = k_.mul(p, value(a));
          if (p == 0) break;
        }
        return p;
      }
    }
    return 0;
  }

  Affine affine(const Term& t, const std::unordered_map<std::uint32_t, std::size_t>& local) {
    switch (t->kind) {
      case TermNode::Kind::Const: return {k_.normalize(t->value), {}};
      case TermNode::Kind::Var: {
        auto it = local.find(t->var);
        if (it != local.end()) return {0, {{it->second, Coeff(1)}}};
        return {value(t), {}};
      }
      case TermNode::Kind::Neg: {
        Affine a = affine(t->args[0], local);
        a.c = k_.neg(a.c);
        for (auto& [i, v] : a.lin) v = k_.neg(v);
        return a;
      }
      case TermNode::Kind::Add: {
        Affine s{0, {}};
        for (const auto& x : t->args) {
          Affine a = affine(x, local);
          s.c = k_.add(s.c, a.c);
          std::vector<std::pair<std::size_t, Coeff>> merged;
          std::size_t p = 0, q = 0;
          while (p < s.lin.size() || q < a.lin.size()) {
            if (q == a.lin.size() || (p < s.lin.size() && s.lin[p].first < a.lin[q].first)) {
              merged.push_back(std::move(s.lin[p++]));
            } else if (p == s.lin.size() || a.lin[q].first < s.lin[p].first) {
              merged.push_back(std::move(a.lin[q++]));
            } else {
              Coeff v = k_.add(s.lin[p].second, a.lin[q].second);
              if (v != 0) merged.emplace_back(s.lin[p].first, v);
              ++p;
              ++q;
            }
          }
          s.lin = std::move(merged);
        }
        return s;
      }
      case TermNode::Kind::Mul: {
        Affine prod{1, {}};
        for (const auto& x : t->args) {
          Affine a = affine(x, local);
          if (!prod.lin.empty() && !a.lin.empty()) unsupported("existential block is not linear in its variables");
          Affine next{k_.mul(prod.c, a.c), {}};
          for (const auto& [i, v] : prod.lin)
            if (Coeff w = k_.mul(v, a.c); w != 0) next.lin.emplace_back(i, w);
          for (const auto& [i, v] : a.lin)
            if (Coeff w = k_.mul(v, prod.c); w != 0) next.lin.emplace_back(i, w);
          prod = std::move(next);
        }
        return prod;
      }
    }
    return {0, {}};
  }

  bool block(const Node& q) {
    std::unordered_map<std::uint32_t, std::size_t> local;
    const Node* body = &q;
    NodePtr hold;
    while (body->kind == NodeKind::Exists) {
      for (auto v : body->bound) local.emplace(v, local.size());
      hold = body->children[0];
      while (hold->kind == NodeKind::Lazy) {
        hold = hold->thunk();
        keep_.push_back(hold);
      }
      body = hold.get();
    }
    std::vector<const Node*> atoms;
    if (body->kind == NodeKind::True) return true;
    if (body->kind == NodeKind::False) return false;
    if (body->kind == NodeKind::Atom) {
      atoms.push_back(body);
    } else if (body->kind == NodeKind::And) {
      for (const auto& c : body->children) {
        if (c->kind == NodeKind::True) continue;
        if (c->kind != NodeKind::Atom) unsupported("existential block body must be a conjunction of equations");
        atoms.push_back(c.get());
      }
    } else {
      unsupported("existential block body must be a conjunction of equations");
    }
    Matrix A;
    std::vector<Coeff> b;
    for (const Node* a : atoms) {
      Affine row = affine(a->term, local);
      if (row.lin.empty()) {
        if (row.c != 0) return false;
        continue;
      }
      std::vector<Coeff> dense(local.size(), Coeff(0));
      for (const auto& [i, v] : row.lin) dense[i] = v;
      A.push_back(std::move(dense));
      b.push_back(k_.neg(row.c));
    }
    if (A.empty()) return true;
    return solve_linear(k_, std::move(A), std::move(b)).has_value();
  }

  const Field& k_;
  std::unordered_map<std::uint32_t, Coeff> env_;
  std::unordered_map<const Node*, bool> memo_;
  std::vector<NodePtr> keep_;  // forced nodes stay alive so memo keys stay unique
};

}  // namespace

bool evaluate(const NodePtr& root, const Assignment& a) {
  Evaluator ev(a);
  return ev.eval(root);
}

bool evaluate(const Formula& F, const Assignment& a) {
  for (const auto& v : F.free)
    if (!a.values.count(v.name)) throw InputError("IncompleteAssignment", "no value for free variable " + v.name);
  return evaluate(F.root, a);
}

// ---------------------------------------------------------------- printing

namespace {

enum class Ctx { First, Summand, Factor };

void put_term(std::string& out, const Term& t, Ctx ctx) {
  switch (t->kind) {
    case TermNode::Kind::Const: out += t->value.get_str(); return;
    case TermNode::Kind::Var: out += name_of(t->var); return;
    case TermNode::Kind::Neg:
      out += '-';
      put_term(out, t->args[0], Ctx::Factor);
      return;
    case TermNode::Kind::Add: {
      bool wrap = ctx != Ctx::First;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        const Term& a = t->args[i];
        if (i == 0) {
          put_term(out, a, Ctx::Summand);
        } else if (a->kind == TermNode::Kind::Neg) {
          out += '-';
          put_term(out, a->args[0], Ctx::Summand);
        } else {
          out += '+';
          put_term(out, a, Ctx::Summand);
        }
      }
      if (wrap) out += ')';
      return;
    }
    case TermNode::Kind::Mul: {
      bool wrap = ctx == Ctx::Factor;
      if (wrap) out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += '*';
        put_term(out, t->args[i], Ctx::Factor);
      }
      if (wrap) out += ')';
      return;
    }
  }
}

void check_budget(const std::string& out) {
  if (out.size() > kMaxPrinted) too_large("printed formula exceeds " + std::to_string(kMaxPrinted) + " bytes");
}

void put(std::string& out, const NodePtr& f) {
  check_budget(out);
  switch (f->kind) {
    case NodeKind::True: out += 'T'; return;
    case NodeKind::False: out += 'F'; return;
    case NodeKind::Atom:
      out += '(';
      put_term(out, f->term, Ctx::First);
      out += "=0)";
      return;
    case NodeKind::Not:
      out += '~';
      put(out, f->children[0]);
      return;
    case NodeKind::And:
    case NodeKind::Or: {
      out += '(';
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out += f->kind == NodeKind::And ? '&' : '|';
        put(out, f->children[i]);
      }
      out += ')';
      return;
    }
    case NodeKind::Exists:
    case NodeKind::Forall:
      for (auto v : f->bound) out += std::string(f->kind == NodeKind::Exists ? "(E " : "(A ") + name_of(v) + ")";
      put(out, f->children[0]);
      return;
    case NodeKind::Lazy: put(out, f->thunk()); return;
    case NodeKind::LazyOr: {
      std::vector<NodePtr> members, cs;
      for (std::size_t i = 0; i < f->count; ++i)
        if (f->member(i, cs)) members.push_back(conj(cs));
      put(out, disj(std::move(members)));
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  put_term(out, t, Ctx::First);
  return out;
}

std::string print_formula(const NodePtr& root) {
  std::string out;
  put(out, root);
  return out;
}

std::string print_formula(const Formula& F) { return print_formula(F.root); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr f = formula();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool ident_char(char c) const { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("expected a variable");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  bool quantifier_ahead(char& kind) const {
    if (pos_ + 3 < s_.size() && s_[pos_] == '(' && (s_[pos_ + 1] == 'E' || s_[pos_ + 1] == 'A') && s_[pos_ + 2] == ' ') {
      kind = s_[pos_ + 1];
      return true;
    }
    return false;
  }

  NodePtr formula() {
    if (at('T') && (pos_ + 1 == s_.size() || !ident_char(s_[pos_ + 1]))) {
      ++pos_;
      return truth(true);
    }
    if (at('F') && (pos_ + 1 == s_.size() || !ident_char(s_[pos_ + 1]))) {
      ++pos_;
      return truth(false);
    }
    if (at('~')) {
      ++pos_;
      return negation(formula());
    }
    char kind;
    if (quantifier_ahead(kind)) {
      std::vector<std::string> vars;
      char k2;
      while (quantifier_ahead(k2) && k2 == kind) {
        pos_ += 3;
        vars.push_back(ident());
        expect(')');
      }
      NodePtr body = formula();
      return kind == 'E' ? exists(vars, body) : forall(vars, body);
    }
    expect('(');
    std::size_t save = pos_;
    try {
      Term t = sum_term();
      if (s_.substr(pos_, 3) == "=0)") {
        pos_ += 3;
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Atom;
        n->term = std::move(t);
        return n;
      }
    } catch (const ParseError&) {
    }
    pos_ = save;
    std::vector<NodePtr> parts{formula()};
    char op = 0;
    while (at('&') || at('|')) {
      if (op && s_[pos_] != op) fail("mixed connectives need parentheses");
      op = s_[pos_++];
      parts.push_back(formula());
    }
    expect(')');
    if (parts.size() == 1) fail("single formula in parentheses");
    auto n = std::make_shared<Node>();
    n->kind = op == '&' ? NodeKind::And : NodeKind::Or;
    n->children = std::move(parts);
    return n;
  }

  Term sum_term() {
    std::vector<Term> xs{prod_term()};
    while (at('+') || at('-')) {
      bool minus = s_[pos_++] == '-';
      Term p = prod_term();
      xs.push_back(minus ? make_term(TermNode::Kind::Neg, {p}) : p);
    }
    return xs.size() == 1 ? xs.front() : make_term(TermNode::Kind::Add, std::move(xs));
  }

  Term prod_term() {
    std::vector<Term> xs{unary_term()};
    while (at('*')) {
      ++pos_;
      xs.push_back(unary_term());
    }
    return xs.size() == 1 ? xs.front() : make_term(TermNode::Kind::Mul, std::move(xs));
  }

  Term unary_term() {
    if (at('-')) {
      ++pos_;
      return make_term(TermNode::Kind::Neg, {unary_term()});
    }
    if (at('(')) {
      ++pos_;
      Term t = sum_term();
      expect(')');
      return t;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (at('/')) {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      auto t = std::make_shared<TermNode>();
      t->kind = TermNode::Kind::Const;
      t->value = Coeff(std::string(s_.substr(start, pos_ - start)));
      t->value.canonicalize();
      return t;
    }
    auto t = std::make_shared<TermNode>();
    t->kind = TermNode::Kind::Var;
    t->var = intern(ident());
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void walk_terms(const Term& t, const std::function<void(std::uint32_t)>& on_var) {
  if (t->kind == TermNode::Kind::Var) on_var(t->var);
  for (const auto& a : t->args) walk_terms(a, on_var);
}

// Visits every node with lazy parts expanded; `scope` holds the enclosing bound variables.
struct Walker {
  std::function<void(const Node&, const std::vector<std::uint32_t>&)> visit;
  std::vector<std::uint32_t> scope;
  std::size_t count = 0;

  void run(const NodePtr& f) {
    if (++count > kMaxNodes) too_large("more than " + std::to_string(kMaxNodes) + " nodes");
    visit(*f, scope);
    switch (f->kind) {
      case NodeKind::Lazy: run(f->thunk()); return;
      case NodeKind::LazyOr: {
        std::vector<NodePtr> cs;
        for (std::size_t i = 0; i < f->count; ++i)
          if (f->member(i, cs)) run(conj(cs));
        return;
      }
      case NodeKind::Exists:
      case NodeKind::Forall: {
        std::size_t mark = scope.size();
        scope.insert(scope.end(), f->bound.begin(), f->bound.end());
        run(f->children[0]);
        scope.resize(mark);
        return;
      }
      default:
        for (const auto& c : f->children) run(c);
    }
  }
};

}  // namespace

NodePtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::size_t node_count(const NodePtr& root) {
  Walker w;
  w.visit = [](const Node&, const std::vector<std::uint32_t>&) {};
  w.run(root);
  return w.count;
}

std::vector<std::string> free_variables(const NodePtr& root) {
  std::set<std::string> out;
  Walker w;
  w.visit = [&](const Node& n, const std::vector<std::uint32_t>& scope) {
    if (n.kind != NodeKind::Atom) return;
    walk_terms(n.term, [&](std::uint32_t v) {
      if (std::find(scope.begin(), scope.end(), v) == scope.end()) out.insert(name_of(v));
    });
  };
  w.run(root);
  return {out.begin(), out.end()};
}

bool well_formed(const NodePtr& root) {
  std::unordered_set<std::uint32_t> bound;
  bool ok = true;
  Walker w;
  w.visit = [&](const Node& n, const std::vector<std::uint32_t>&) {
    if (n.kind == NodeKind::Exists || n.kind == NodeKind::Forall)
      for (auto v : n.bound) ok = bound.insert(v).second && ok;
  };
  w.run(root);
  if (!ok) return false;
  for (const auto& v : free_variables(root))
    if (bound.count(intern(v))) return false;
  return true;
}

}  // namespace hopfsmooth::fol
