#ifndef QHYP_QDIFFERENCE_HPP
#define QHYP_QDIFFERENCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhyp/qseries.hpp"

namespace qhyp {

/// The operator gamma * delta - 1, where delta f(z) = f(qz). On monomials it is
/// diagonal: z^p -> (gamma q^p - 1) z^p.
template <class Real>
struct DilationOp {
  Complex<Real> gamma;
  /// Set when gamma = q^k; the factor is then q^{k+m} - 1, exactly zero at m = -k.
  std::optional<int> q_exponent{};

  static DilationOp power_of_q(int k, const Complex<Real>& q) { return {ipow(q, k), k}; }
};

/// delta: coeffs[m] *= q^m.
template <class Real>
Poly<Real> apply_delta(const Poly<Real>& p, const Complex<Real>& q);

/// coeffs[m] *= (gamma q^m - 1). The result is not monic.
template <class Real>
Poly<Real> apply_Delta(const DilationOp<Real>& op, const Poly<Real>& p, const Complex<Real>& q);

/// An evaluated identity: its value and the largest single term that entered it.
template <class Real>
struct ResidualEval {
  Complex<Real> value;
  Real scale = 0;

  Real normalized() const { return scale > 0 ? std::abs(value) / scale : std::abs(value); }
};

/// Delta_1 prod_k Delta_{beta_k/q} p(z) - z Delta_{q^-N} prod_j Delta_{alpha_j} p(z q^{s-r}),
/// built by composing coefficient-basis operators.
template <class Real>
ResidualEval<Real> qde_operator_form(const Poly<Real>& p, const ParamSet<Real>& params,
                                     const Complex<Real>& z);

/// The same identity expanded into point evaluations p(z q^k) weighted by the
/// elementary symmetric functions. Equals (-1)^{s+1} times the operator form.
template <class Real>
ResidualEval<Real> qde_expanded_form(const Poly<Real>& p, const ParamSet<Real>& params,
                                     const Complex<Real>& z);

/// Normalized operator-form residuals at each sample point. Throws
/// Error{DegreeMismatch} when deg p != N.
template <class Real>
std::vector<Complex<Real>> qde_residual(const Poly<Real>& p, const ParamSet<Real>& params,
                                        std::span<const Complex<Real>> zs);

/// Seeded points uniform in the disc |z| <= max(1, |q|^-N).
template <class Real>
std::vector<Complex<Real>> qde_sample_points(const ParamSet<Real>& params, int count, std::uint64_t seed);

}  // namespace qhyp

#endif  // QHYP_QDIFFERENCE_HPP
