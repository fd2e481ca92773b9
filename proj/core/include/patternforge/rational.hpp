#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace patternforge {

/// Exact rational scalar used for every realization and coefficient.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "-p/q" or an integer. Throws std::invalid_argument on
/// anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" when q != 1, otherwise "p".
std::string to_string(const Rational& value);

/// Lossless conversion of a finite binary floating value.
Rational exact_from_double(double value);
Rational exact_from_long_double(long double value);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(long double value, std::uint64_t max_denominator);

int sign(const Rational& value);

}  // namespace patternforge
