#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace blockmerge {

/// Exact rational scalar. GMP keeps every value canonical: positive
/// denominator, numerator and denominator coprime.
using ExactRational = mpq_class;
using BigInt = mpz_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
ExactRational make_rational(const BigInt& num, const BigInt& den);

/// base^exp with 0^0 == 1.
ExactRational pow(const ExactRational& base, unsigned long exp);
BigInt pow(const BigInt& base, unsigned long exp);

/// (numerator, denominator) as base-10 strings.
std::pair<std::string, std::string> to_decimal_strings(const ExactRational& q);

/// Parses "p", "p/q" or a plain decimal such as "-1.25" into an exact value.
ExactRational parse_rational(const std::string& text);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const ExactRational& q, int digits);

double to_double(const ExactRational& q);

}  // namespace blockmerge
