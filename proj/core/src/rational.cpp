#include "homonet/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace homonet {
namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal: '" + text + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction: '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    value = Rational(BigInt(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal: '" + text + "'");
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(BigInt(whole.empty() ? "0" : whole) * scale + BigInt(frac), scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed integer: '" + text + "'");
    value = Rational(BigInt(s));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace homonet
