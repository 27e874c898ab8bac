#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace saito {

// Exact rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

// Floor and ceiling as machine integers. The value must fit in a long.
long floor_to_long(const Rational& q);
long ceil_to_long(const Rational& q);

Rational rational_pow(const Rational& base, long exponent);

// a/b in lowest terms.
Rational frac(long a, long b);

}  // namespace saito
