#include "wmr/rational.hpp"

#include <algorithm>
#include <limits>

#include "wmr/errors.hpp"

namespace wmr {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw ParameterError("malformed rational '" + std::string(whole) + "'");
  }
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) {
    throw ParameterError("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ParameterError("malformed rational '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(text.substr(start)));
  return text.front() == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw ParameterError("rational with zero denominator");
  }
  if (den < 0) {
    return Rational(BigInt(-num), BigInt(-den));
  }
  return Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  BigInt num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw ParameterError("malformed rational '" + std::string(text) + "'");
  }
  return make_rational(num, parse_integer(den_text, text));
}

std::string to_string(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) {
    throw ParameterError("decimal digits must be nonnegative");
  }
  BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const bool negative = num < 0;
  if (negative) {
    num = -num;
  }
  const BigInt scale = power(BigInt(10), static_cast<unsigned>(digits));
  BigInt scaled = num * scale;
  BigInt quotient = scaled / den;
  const BigInt remainder = scaled % den;
  if (remainder * 2 >= den) {
    ++quotient;
  }
  std::string text = quotient.str();
  if (digits > 0) {
    if (text.size() <= static_cast<std::size_t>(digits)) {
      text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
    }
    text.insert(text.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && quotient != 0) {
    text.insert(0, "-");
  }
  return text;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

BigInt floor(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) {
    --q;
  }
  return q;
}

BigInt ceil(const Rational& value) {
  BigInt f = floor(value);
  return Rational(f) == value ? f : BigInt(f + 1);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

BigInt power(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::int64_t to_int64(const BigInt& value, std::string_view what) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw ParameterError(std::string(what) + " does not fit in 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace wmr
