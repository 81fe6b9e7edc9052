#include "qhyp/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace qhyp {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for binary64.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  const boost::multiprecision::cpp_int one(1);
  if (exponent > 0) {
    r *= Rational(one << exponent);
  } else if (exponent < 0) {
    r /= Rational(one << -exponent);
  }
  return r;
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  using boost::multiprecision::cpp_int;
  if (slash == std::string::npos) return Rational(cpp_int(text));
  const cpp_int den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(cpp_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& x) { return x.str(); }

}  // namespace qhyp
