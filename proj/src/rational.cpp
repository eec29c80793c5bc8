#include "conecurve/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "conecurve/errors.hpp"

namespace conecurve {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational");
  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(s) + "'");
    Integer q(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    value = Rational(Integer(std::string(num), 10), q);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw ParseError("malformed decimal '" + std::string(s) + "'");
    }
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole), 10);
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) throw ParseError("malformed rational '" + std::string(s) + "'");
    value = Rational(Integer(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

Rational parse_rational_approx(std::string_view text, bool* snapped) {
  if (snapped) *snapped = false;
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
  }
  std::string s(trim(text));
  char* end = nullptr;
  long double v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("malformed number '" + s + "'");
  }
  Rational exact = from_long_double(v);
  Rational r = snap_down(exact);
  if (snapped) *snapped = true;
  return r;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str(10);
}

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

Rational from_long_double(long double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  if (v == 0) return Rational(0);
  int exp = 0;
  long double m = std::frexp(v, &exp);  // v = m * 2^exp, 0.5 <= |m| < 1
  // 64 mantissa bits cover x87 long double; for plain double it is exact too.
  long double scaled = std::ldexp(m, 64);
  Integer mant;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  // split into two 32-bit halves to stay within unsigned long on all hosts
  long double hi = std::floor(scaled / 4294967296.0L);
  long double lo = scaled - hi * 4294967296.0L;
  mant = Integer(static_cast<unsigned long>(hi));
  mant <<= 32;
  mant += Integer(static_cast<unsigned long>(lo));
  if (neg) mant = -mant;
  Rational r(mant);
  r *= pow2(exp - 64);
  r.canonicalize();
  return r;
}

Rational pow2(int exponent) {
  Integer p = 1;
  if (exponent >= 0) {
    p <<= static_cast<unsigned>(exponent);
    return Rational(p);
  }
  p <<= static_cast<unsigned>(-exponent);
  return Rational(Integer(1), p);
}

Rational snap_down(const Rational& r, unsigned bits) {
  Integer scale = 1;
  scale <<= bits;
  Integer num = r.get_num() * scale;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  Rational out(q, scale);
  out.canonicalize();
  return out;
}

Rational sqrt_floor(const Rational& r, unsigned bits) {
  if (sgn(r) < 0) throw DomainError("square root of a negative number");
  // floor(sqrt(r) * 2^b) = floor(sqrt(floor(r * 4^b)))
  Integer num = r.get_num();
  num <<= 2 * bits;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  Integer scale = 1;
  scale <<= bits;
  Rational out(root, scale);
  out.canonicalize();
  return out;
}

Rational sqrt_ceil(const Rational& r, unsigned bits) {
  Rational lo = sqrt_floor(r, bits);
  if (lo * lo == r) return lo;
  return lo + pow2(-static_cast<int>(bits));
}

Rational cbrt_trunc(const Rational& r, unsigned bits) {
  bool neg = sgn(r) < 0;
  Rational a = neg ? Rational(-r) : r;
  Integer num = a.get_num();
  num <<= 3 * bits;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
  Integer root;
  mpz_root(root.get_mpz_t(), q.get_mpz_t(), 3);
  Integer scale = 1;
  scale <<= bits;
  Rational out(root, scale);
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

}  // namespace conecurve
