#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace syzygy {

using Integer = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form: "p" for integers, otherwise "p/q" with q > 0 in
/// lowest terms. Never a decimal.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q" and surrounding whitespace. Throws InvalidInput.
Rational parse_rational(std::string_view text);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);
int sign(const Rational& value);

/// Narrowing conversion; throws Internal if the value does not fit.
Integer to_integer(const BigInt& value);

inline Rational make_rational(Integer num, Integer den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace syzygy
