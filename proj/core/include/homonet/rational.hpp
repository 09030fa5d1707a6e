#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace homonet {

/// Arbitrary-precision rational used wherever stability verdicts depend on
/// exact boundary behaviour (thresholds like n_R/(n_R+1) must compare exactly).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Parses "15", "1.01", "-2.5", or "101/100". Decimal inputs are converted
/// exactly (1.01 -> 101/100). Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(const std::string& text);

/// Renders as "p/q", or just "p" when q == 1.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

}  // namespace homonet
