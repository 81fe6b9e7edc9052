#include "qhyp/qseries.hpp"

#include <cmath>
#include <string>

namespace qhyp {

template <class Real>
Complex<Real> qpochhammer(const Complex<Real>& gamma, const Complex<Real>& q, int m) {
  Complex<Real> acc(1);
  for (int i = 0; i < m; ++i) acc *= Complex<Real>(1) - gamma * ipow(q, i);
  return acc;
}

template <class Real>
Poly<Real> coeffs_P(const ParamSet<Real>& params) {
  const int N = params.N;
  const int balance = params.s() - params.r();
  const auto& q = params.q;
  const Complex<Real> one(1);

  Poly<Real> p;
  p.coeffs.reserve(N + 1);
  p.coeffs.push_back(one);
  for (int m = 0; m < N; ++m) {
    const Complex<Real> qm = ipow(q, m);
    Complex<Real> num = one - ipow(q, m - N);
    for (const auto& a : params.alpha) num *= one - a * qm;
    Complex<Real> den = one - ipow(q, m + 1);
    for (const auto& b : params.beta) den *= one - b * qm;
    // [(-1)^{m+1} q^{(m+1)m/2}] / [(-1)^m q^{m(m-1)/2}] = -q^m
    const Complex<Real> ratio = num / den * ipow(-qm, balance);
    const Complex<Real> next = p.coeffs.back() * ratio;
    if (!(std::abs(next) <= Real(kOverflowThreshold))) {
      throw Error(ErrorCode::OverflowRisk,
                  "coefficient of z^" + std::to_string(m + 1) +
                      " exceeds 1e280; use extended precision or a smaller N");
    }
    p.coeffs.push_back(next);
  }
  return p;
}

template <class Real>
Poly<Real> to_monic(const Poly<Real>& p) {
  if (p.coeffs.empty() || p.leading() == Complex<Real>(0))
    throw Error(ErrorCode::ZeroLeadingCoefficient, "cannot normalize a polynomial with zero leading coefficient");
  if (p.monic) return p;
  Poly<Real> out = p;
  const Complex<Real> lead = p.leading();
  for (auto& c : out.coeffs) c /= lead;
  out.coeffs.back() = Complex<Real>(1);
  out.monic = true;
  return out;
}

template <class Real>
std::pair<Complex<Real>, Complex<Real>> eval_poly_and_derivative(const Poly<Real>& p,
                                                                 const Complex<Real>& z) {
  Complex<Real> value(0), deriv(0);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
  return {value, deriv};
}

template <class Real>
Complex<Real> eval_phi(std::span<const Complex<Real>> alphas_full, const ParamSet<Real>& params,
                       const Complex<Real>& z, Real tol) {
  if (static_cast<int>(alphas_full.size()) != params.r() + 1) {
    throw Error(ErrorCode::LengthMismatch, "expected r+1 = " + std::to_string(params.r() + 1) +
                                               " numerator parameters, got " +
                                               std::to_string(alphas_full.size()));
  }
  constexpr int kMaxTerms = 10000;
  const int balance = params.s() - params.r();
  const auto& q = params.q;
  const Complex<Real> one(1);
  // A numerator factor this close to zero is a terminating parameter
  // gamma = q^-p hit exactly up to rounding.
  const Real vanish = Real(64) * std::numeric_limits<Real>::epsilon();

  Complex<Real> term = one;
  Complex<Real> sum = one;
  int small_run = 0;
  for (int p = 0; p < kMaxTerms; ++p) {
    const Complex<Real> qp = ipow(q, p);
    Complex<Real> num = z;
    for (const auto& a : alphas_full) {
      const Complex<Real> factor = one - a * qp;
      if (std::abs(factor) <= vanish * (Real(1) + std::abs(a * qp))) return sum;
      num *= factor;
    }
    Complex<Real> den = one - qp * q;
    for (const auto& b : params.beta) den *= one - b * qp;
    term *= num / den * ipow(-qp, balance);
    if (!std::isfinite(std::abs(term)))
      throw Error(ErrorCode::NoConvergence, "series terms overflow (divergent series)");
    sum += term;
    if (std::abs(term) < tol * std::abs(sum)) {
      if (++small_run == 3) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NoConvergence, "series did not converge within 10000 terms");
}

#define QHYP_INSTANTIATE(Real)                                                                   \
  template Complex<Real> qpochhammer(const Complex<Real>&, const Complex<Real>&, int);           \
  template Poly<Real> coeffs_P(const ParamSet<Real>&);                                           \
  template Poly<Real> to_monic(const Poly<Real>&);                                               \
  template std::pair<Complex<Real>, Complex<Real>> eval_poly_and_derivative(const Poly<Real>&,   \
                                                                            const Complex<Real>&); \
  template Complex<Real> eval_phi(std::span<const Complex<Real>>, const ParamSet<Real>&,         \
                                  const Complex<Real>&, Real);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
