#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace antipode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_exact_string(const Rational& value);

/// 15 significant digits, e.g. "1.5" or "0.857142857142857".
std::string to_decimal_string(const Rational& value);

/// Accepts "p", "-p" or "p/q" with decimal integers. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace antipode
