#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace value1 {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Parses "num/den", "num", "0" or "1". Throws ParseError on anything else
/// (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical "num/den" rendering; integers render without a denominator.
std::string to_string(const Rational& value);

/// value^exponent, exact.
Rational pow(const Rational& value, unsigned long exponent);

/// Double approximation, for display only.
double approximate(const Rational& value);

}  // namespace value1
