#include "antipode/rational.hpp"

#include <cctype>
#include <cstdio>

#include "antipode/error.hpp"

namespace antipode {

std::string to_exact_string(const Rational& value) { return value.str(); }

std::string to_decimal_string(const Rational& value) {
  const double approx = static_cast<double>(value);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", approx);
  return buf;
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace antipode
