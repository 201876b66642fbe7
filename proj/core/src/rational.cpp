#include "subshift/rational.hpp"

#include <cctype>

#include "subshift/error.hpp"

namespace subshift {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw FormatError("not a rational number: '" + std::string(whole) + "'");
  }
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw FormatError("denominator must be unsigned: '" + std::string(text) + "'");
    }
    BigInt den = parse_integer(den_text, text);
    if (den == 0) throw FormatError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty()) int_part = "0";
    if (!all_digits(int_part) || !all_digits(frac_part)) {
      throw FormatError("not a rational number: '" + std::string(text) + "'");
    }
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    BigInt num = BigInt(std::string(int_part)) * scale + BigInt(std::string(frac_part));
    Rational r(num, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) {
  if (boost::multiprecision::denominator(value) == 1) {
    return boost::multiprecision::numerator(value).str();
  }
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

BigInt floor(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt ceil(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace subshift
