#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace subshift {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Parses "p/q", "p" or a finite decimal such as "0.25". Throws FormatError.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Smallest integer >= value.
BigInt ceil(const Rational& value);
/// Largest integer <= value.
BigInt floor(const Rational& value);

double to_double(const Rational& value);

}  // namespace subshift
