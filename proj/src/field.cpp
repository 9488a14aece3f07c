#include "hopfsmooth/field.hpp"

#include <cctype>
#include <cstdlib>
#include <mutex>

#include "hopfsmooth/error.hpp"
#include "hopfsmooth/limits.hpp"

namespace hopfsmooth {

namespace {

std::mutex g_limits_mutex;

ResourceLimits initial_limits() {
  ResourceLimits limits;
  if (const char* env = std::getenv("HOPFSMOOTH_DEGREE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) limits.max_degree = static_cast<std::uint32_t>(v);
  }
  return limits;
}

ResourceLimits& limits_storage() {
  static ResourceLimits limits = initial_limits();
  return limits;
}

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i >= s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = mpz_class(std::string(s.substr(i)), 10);
  if (negative) out = -out;
  return true;
}

}  // namespace

const ResourceLimits& default_limits() {
  std::lock_guard<std::mutex> lock(g_limits_mutex);
  return limits_storage();
}

void set_default_limits(const ResourceLimits& limits) {
  std::lock_guard<std::mutex> lock(g_limits_mutex);
  limits_storage() = limits;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
  mpz_class r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class s0 = 0, s1 = 1;
  while (r1 != 0) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw InvariantViolation("NotInvertible", "element is not a unit modulo " + m.get_str());
  mpz_class res = s0 % m;
  if (res < 0) res += m;
  return res;
}

Field Field::rationals() { return Field(FieldKind::Rationals, 0); }
Field Field::integers() { return Field(FieldKind::Integers, 0); }

Field Field::prime(const mpz_class& p) {
  if (!is_probable_prime(p)) throw InputError("NotPrime", "field characteristic " + p.get_str() + " is not prime");
  return Field(FieldKind::Prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text == "Z" || text == "ZZ") return integers();
  std::string_view digits;
  if (text.rfind("Fp:", 0) == 0) digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F') digits = text.substr(1);
  mpz_class p;
  if (!digits.empty() && parse_integer(digits, p)) return prime(p);
  throw InputError("BadField", "unrecognised field '" + std::string(text) + "' (expected Q, Z or Fp:<p>)");
}

mpz_class Field::characteristic() const { return kind_ == FieldKind::Prime ? p_ : mpz_class(0); }

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Integers: return "Z";
    case FieldKind::Prime: return "Fp:" + p_.get_str();
  }
  return "?";
}

Coeff Field::normalize(const Coeff& c) const {
  switch (kind_) {
    case FieldKind::Rationals: return c;
    case FieldKind::Integers:
      if (c.get_den() != 1) throw InputError("NonIntegral", "coefficient " + c.get_str() + " is not an integer");
      return c;
    case FieldKind::Prime: {
      mpz_class num = c.get_num() % p_;
      if (num < 0) num += p_;
      if (c.get_den() != 1) {
        mpz_class den = c.get_den() % p_;
        if (den == 0)
          throw InputError("BadReductionDenominator",
                           "denominator of " + c.get_str() + " vanishes modulo " + p_.get_str());
        num = (num * mod_inverse(den, p_)) % p_;
      }
      return Coeff(num);
    }
  }
  return c;
}

Coeff Field::parse_literal(std::string_view text) const {
  auto slash = text.find('/');
  mpz_class num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw InputError("BadLiteral", "bad field literal '" + std::string(text) + "'");
  } else {
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den) || den == 0)
      throw InputError("BadLiteral", "bad field literal '" + std::string(text) + "'");
  }
  Coeff c(num, den);
  c.canonicalize();
  return normalize(c);
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
  if (kind_ != FieldKind::Prime) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return Coeff(r);
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
  if (kind_ != FieldKind::Prime) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return Coeff(r);
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
  if (kind_ != FieldKind::Prime) return a * b;
  return Coeff(mpz_class((a.get_num() * b.get_num()) % p_));
}

Coeff Field::neg(const Coeff& a) const {
  if (kind_ != FieldKind::Prime) return -a;
  if (a == 0) return a;
  return Coeff(mpz_class(p_ - a.get_num()));
}

Coeff Field::inv(const Coeff& a) const {
  if (a == 0) throw InvariantViolation("DivisionByZero", "inverse of zero");
  switch (kind_) {
    case FieldKind::Rationals: return 1 / a;
    case FieldKind::Integers:
      if (abs(a) != 1) throw InvariantViolation("NotInvertible", "integer " + a.get_str() + " is not a unit");
      return a;
    case FieldKind::Prime: return Coeff(mod_inverse(a.get_num(), p_));
  }
  return a;
}

Coeff Field::pow(const Coeff& a, unsigned long e) const {
  if (kind_ == FieldKind::Prime) {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), a.get_num_mpz_t(), e, p_.get_mpz_t());
    return Coeff(r);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), a.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), a.get_den_mpz_t(), e);
  return Coeff(n, d);
}

std::string Field::to_string(const Coeff& c) const { return c.get_str(); }

}  // namespace hopfsmooth
