#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pwl {

/// Arbitrary-precision rational number (GMP).
using Rational = mpq_class;

/// Parses "p", "p/q", or a decimal literal such as "-0.05" or "1.5e-3".
/// Throws ParseError on malformed text.
Rational parse_rational(std::string_view text);

/// Exact rational whose decimal expansion is the shortest round-trip
/// representation of `value` (so 0.05 maps to 1/20, not to the binary
/// fraction nearest it). Throws DomainError for non-finite input.
Rational rational_from_double(double value);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);
long double to_long_double(const Rational& q);

}  // namespace pwl
