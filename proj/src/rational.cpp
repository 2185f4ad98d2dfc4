#include "syzygy/rational.hpp"

#include <cctype>
#include <limits>

#include "syzygy/error.hpp"

namespace syzygy {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& value) {
  const BigInt& num = mp::numerator(value);
  const BigInt& den = mp::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) pos = 1;
  if (pos == s.size()) throw Error(ErrorKind::InvalidInput, "not a rational: '" + std::string(whole) + "'");
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(ErrorKind::InvalidInput, "not a rational: '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(s.substr(pos)));
  return s[0] == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  BigInt num = parse_integer(s.substr(0, slash), text);
  BigInt den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

BigInt floor(const Rational& value) {
  const BigInt& num = mp::numerator(value);
  const BigInt& den = mp::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) {
  const BigInt& num = mp::numerator(value);
  const BigInt& den = mp::denominator(value);
  BigInt q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

int sign(const Rational& value) { return value.sign(); }

Integer to_integer(const BigInt& value) {
  if (value > std::numeric_limits<Integer>::max() || value < std::numeric_limits<Integer>::min()) {
    throw Error(ErrorKind::Internal, "integer overflow: " + value.str());
  }
  return value.convert_to<Integer>();
}

}  // namespace syzygy
