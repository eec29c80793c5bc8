#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace conecurve {

using Rational = mpq_class;
using Integer = mpz_class;

// Number of fractional bits used when an irrational value (square or cube
// root) is snapped to a dyadic rational. The snapping error is < 2^-kSnapBits.
inline constexpr unsigned kSnapBits = 64;

// Accepts "p/q", integers and terminating decimals ("1.05", "-0.125").
Rational parse_rational(std::string_view text);

// Like parse_rational, but also accepts any floating-point literal
// ("1e-3", "0.333333"), which is snapped down to a multiple of 2^-kSnapBits.
// `snapped` is set when the value had to be rounded.
Rational parse_rational_approx(std::string_view text, bool* snapped = nullptr);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact value of a finite long double (which is always a dyadic rational).
Rational from_long_double(long double v);

Rational pow2(int exponent);

// floor(r * 2^bits) / 2^bits.
Rational snap_down(const Rational& r, unsigned bits = kSnapBits);

// floor(sqrt(r) * 2^bits) / 2^bits for r >= 0. Exact integer arithmetic.
Rational sqrt_floor(const Rational& r, unsigned bits = kSnapBits);

// Odd-symmetric cube root truncated toward zero at 2^-bits.
Rational cbrt_trunc(const Rational& r, unsigned bits = kSnapBits);

// Smallest dyadic >= sqrt(r) on the 2^-bits grid.
Rational sqrt_ceil(const Rational& r, unsigned bits = kSnapBits);

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs_value(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

}  // namespace conecurve
