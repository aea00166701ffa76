#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace troplane {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" with q > 0 and gcd 1, or "p" when integral.
std::string to_string(const Rational& q);

// Accepts "p", "p/q" and finite decimals such as "-1.25". Throws ParseError.
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

// Representative of q modulo m in [0, m); m > 0.
Rational mod_positive(const Rational& q, const Rational& m);

// Canonical n/d; d != 0.
inline Rational frac(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double to_double(const Rational& q);

}  // namespace troplane
