#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace sympstab {

/** Exact rational scalar. Expression templates are off so it composes with Eigen. */
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/** Integer scalar for lattice coordinates. */
using Integer = std::int64_t;

/** Parse "p", "-p" or "p/q". Floating-point literals are rejected with a hint. */
Rational parse_rational(std::string_view text);

/** "p/q" or "p" when the denominator is one. */
std::string format_rational(const Rational& value);

int sign(const Rational& value);

/** True when value has denominator one. */
bool is_integral(const Rational& value);

/** Exact square root when value is the square of a nonnegative rational. */
bool exact_sqrt(const Rational& value, Rational& root);

}  // namespace sympstab

namespace Eigen {

template <>
struct NumTraits<sympstab::Rational> : GenericNumTraits<sympstab::Rational> {
  using Real = sympstab::Rational;
  using NonInteger = sympstab::Rational;
  using Literal = sympstab::Rational;
  using Nested = sympstab::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8
  };

  // Exact arithmetic: there is no rounding tolerance.
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
