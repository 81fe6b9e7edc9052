#ifndef QHYP_PARAMS_HPP
#define QHYP_PARAMS_HPP

#include <span>
#include <vector>

#include "qhyp/types.hpp"

namespace qhyp {

/// Parameters of one polynomial family instance: degree N, base q, numerator
/// parameters alpha (r of them) and denominator parameters beta (s of them).
template <class Real>
struct ParamSet {
  int N = 1;
  Complex<Real> q{Real(0.5)};
  std::vector<Complex<Real>> alpha;
  std::vector<Complex<Real>> beta;

  int r() const { return static_cast<int>(alpha.size()); }
  int s() const { return static_cast<int>(beta.size()); }
};

/// Elementary symmetric functions: prod(1 + alpha_j x) = 1 + sum a_j x^j, and
/// likewise b_k for beta. a[0] holds a_1.
template <class Real>
struct SymFuncs {
  std::vector<Complex<Real>> a;
  std::vector<Complex<Real>> b;
};

inline constexpr double kGenericityTol = 1e-12;

/// Throws Error{InvalidDegree} or Error{NonGenericParameter}; otherwise returns
/// a copy of the input.
template <class Real>
ParamSet<Real> validate(const ParamSet<Real>& params);

/// True when |q| = 1 within the genericity tolerance. Such q are accepted but
/// flagged in reports.
template <class Real>
bool q_on_unit_circle(const ParamSet<Real>& params);

/// Coefficients e_1..e_n of prod(1 + v_i x), by iterated convolution.
template <class Real>
std::vector<Complex<Real>> elementary_symmetric(std::span<const Complex<Real>> values);

template <class Real>
SymFuncs<Real> elem_sym(const ParamSet<Real>& params);

/// Removes u trailing (alpha, beta) pairs that coincide. Requires r-u >= 1 and
/// s-u >= 1.
template <class Real>
ParamSet<Real> reduce(const ParamSet<Real>& params, int u);

template <class To, class From>
ParamSet<To> convert_params(const ParamSet<From>& params) {
  ParamSet<To> out;
  out.N = params.N;
  out.q = Complex<To>(static_cast<To>(params.q.real()), static_cast<To>(params.q.imag()));
  for (const auto& a : params.alpha)
    out.alpha.emplace_back(static_cast<To>(a.real()), static_cast<To>(a.imag()));
  for (const auto& b : params.beta)
    out.beta.emplace_back(static_cast<To>(b.real()), static_cast<To>(b.imag()));
  return out;
}

}  // namespace qhyp

#endif  // QHYP_PARAMS_HPP
