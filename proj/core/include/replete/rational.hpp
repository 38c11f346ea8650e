#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace replete {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "-p/q" or a decimal literal such as "1.25" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Least common multiple of all denominators.
Integer common_denominator(const RationalVector& v);

// 2^k as an exact rational, k may be negative.
Rational pow2(long k);

Rational pow(const Rational& base, long exponent);

}  // namespace replete
