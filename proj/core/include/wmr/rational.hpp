#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wmr {

/// Arbitrary-precision integer.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator, so equality is structural.
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den, rejecting a zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p/q", "-p/q" or a plain integer.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering with exactly `digits` fractional digits, rounded half
/// away from zero.
std::string to_decimal(const Rational& value, int digits = 12);

double to_double(const Rational& value);

bool is_integer(const Rational& value);
BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

BigInt power(const BigInt& base, unsigned exponent);

/// Narrows to int64, throwing ParameterError when the value does not fit.
std::int64_t to_int64(const BigInt& value, std::string_view what);

}  // namespace wmr
