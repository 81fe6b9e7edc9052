#ifndef QHYP_RATIONAL_HPP
#define QHYP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qhyp {

/// Exact rational with arbitrary-precision numerator and denominator, kept in
/// lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite binary64 number (a dyadic rational).
Rational rational_from_double(double x);

double to_double(const Rational& x);

/// Parses "p/q" or an integer.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

}  // namespace qhyp

#endif  // QHYP_RATIONAL_HPP
