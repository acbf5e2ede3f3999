#pragma once

#include <gmpxx.h>

#include <string>

namespace subpareto {

/// Parses "7", "-3/10" or "0.25" into an exact rational. No exponent
/// notation. Throws input_error on anything else.
mpq_class parse_rational(const std::string& text);

/// Nearest double to an exact rational, ties to even. mpq_get_d truncates,
/// which is not good enough for rendered report values.
double rational_to_double(const mpq_class& value);

/// Decimal rendering with `significant_digits` significant digits, rounded
/// half to even. Uses plain notation for moderate exponents, scientific
/// otherwise; trailing zeros are stripped.
std::string rational_decimal(const mpq_class& value, int significant_digits);

/// Number of fractional digits of the exact terminating decimal expansion,
/// or -1 when the expansion does not terminate (denominator has a prime
/// factor other than 2 and 5).
int decimal_exact_digits(const mpq_class& value);

} // namespace subpareto
