#include "sympstab/rational.hpp"

#include <regex>

#include "sympstab/errors.hpp"

namespace sympstab {

Rational parse_rational(std::string_view text) {
  static const std::regex kRational(R"(\s*([+-]?[0-9]+)(/([0-9]+))?\s*)");
  static const std::regex kDecimal(R"(\s*[+-]?[0-9]*\.[0-9]*([eE][+-]?[0-9]+)?\s*|.*[eE].*)");
  const std::string s(text);
  std::smatch match;
  if (!std::regex_match(s, match, kRational)) {
    if (std::regex_match(s, kDecimal)) {
      throw ValidationError("'" + s + "' is not an exact rational; write fractions as p/q (e.g. 5/2 instead of 2.5)");
    }
    throw ValidationError("cannot parse '" + s + "' as a rational p/q");
  }
  Rational num(match[1].str());
  if (!match[3].matched) return num;
  Rational den(match[3].str());
  if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
  return num / den;
}

std::string format_rational(const Rational& value) { return value.str(); }

int sign(const Rational& value) { return value.sign(); }

bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

bool exact_sqrt(const Rational& value, Rational& root) {
  if (value < 0) return false;
  using boost::multiprecision::mpz_int;
  const mpz_int num = boost::multiprecision::numerator(value);
  const mpz_int den = boost::multiprecision::denominator(value);
  const mpz_int rn = boost::multiprecision::sqrt(num);
  const mpz_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace sympstab
