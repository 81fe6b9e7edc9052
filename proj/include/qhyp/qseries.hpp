#ifndef QHYP_QSERIES_HPP
#define QHYP_QSERIES_HPP

#include <span>
#include <vector>

#include "qhyp/params.hpp"

namespace qhyp {

/// Dense polynomial, coeffs[m] is the coefficient of z^m.
template <class Real>
struct Poly {
  std::vector<Complex<Real>> coeffs;
  bool monic = false;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Complex<Real>& leading() const { return coeffs.back(); }
};

inline constexpr double kOverflowThreshold = 1e280;

/// (gamma; q)_m = prod_{i<m} (1 - gamma q^i), multiplied left to right.
template <class Real>
Complex<Real> qpochhammer(const Complex<Real>& gamma, const Complex<Real>& q, int m);

/// Coefficients of the degree-N terminating series with numerator parameters
/// q^-N, alpha and denominator parameters beta. Built by the ratio of
/// consecutive terms. Throws Error{OverflowRisk} when a coefficient exceeds
/// kOverflowThreshold in magnitude.
template <class Real>
Poly<Real> coeffs_P(const ParamSet<Real>& params);

/// Divides by the leading coefficient; the new leading coefficient is set to
/// exactly one.
template <class Real>
Poly<Real> to_monic(const Poly<Real>& p);

template <class Real>
Poly<Real> monic_poly(const ParamSet<Real>& params) {
  return to_monic(coeffs_P(params));
}

template <class Real>
Complex<Real> horner(std::span<const Complex<Real>> coeffs, const Complex<Real>& z) {
  Complex<Real> acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <class Real>
Complex<Real> eval_poly(const Poly<Real>& p, const Complex<Real>& z) {
  return horner<Real>(p.coeffs, z);
}

/// Value and first derivative by a single Horner pass.
template <class Real>
std::pair<Complex<Real>, Complex<Real>> eval_poly_and_derivative(const Poly<Real>& p,
                                                                 const Complex<Real>& z);

/// Partial sum of the basic hypergeometric series with r+1 numerator
/// parameters (alphas_full) and the denominator parameters, q, and balance
/// exponent s-r taken from params. Stops when three consecutive terms fall below
/// tol * |partial sum| or when a numerator factor vanishes (terminating case).
/// Throws Error{NoConvergence} after 10000 terms.
template <class Real>
Complex<Real> eval_phi(std::span<const Complex<Real>> alphas_full, const ParamSet<Real>& params,
                       const Complex<Real>& z, Real tol);

}  // namespace qhyp

#endif  // QHYP_QSERIES_HPP
