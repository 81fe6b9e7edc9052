#ifndef QHYP_LINALG_HPP
#define QHYP_LINALG_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qhyp/types.hpp"

namespace qhyp {

template <class Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

/// Diagonal similarity D^-1 A D with power-of-two entries of D chosen so that
/// row and column norms are comparable (Parlett-Reinsch). The spectrum is
/// unchanged and the result is better conditioned for the QR iteration.
template <class Real>
CMatrix<Real> balance(const CMatrix<Real>& a);

/// All eigenvalues of a dense complex matrix: optional balancing, Hessenberg
/// reduction and shifted complex QR (Eigen::ComplexEigenSolver). Throws
/// Error{EigenNoConvergence}.
template <class Real>
std::vector<Complex<Real>> eigenvalues(const CMatrix<Real>& a, bool balanced = true);

/// Complex logarithm of det(a) from a partial-pivoting LU factorization; the
/// imaginary part is the phase, reduced to (-pi, pi].
template <class Real>
Complex<Real> log_det(const CMatrix<Real>& a);

/// Sum of principal logarithms, phase reduced to (-pi, pi].
template <class Real>
Complex<Real> log_product(std::span<const Complex<Real>> values);

/// |exp(lhs - rhs) - 1| with the phase difference wrapped; the relative gap
/// between two numbers given by their logarithms.
template <class Real>
Real log_relative_gap(const Complex<Real>& lhs, const Complex<Real>& rhs);

template <class Real>
Real max_abs_entry(const CMatrix<Real>& a) {
  Real m = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

/// Infinity norm (maximum absolute row sum).
template <class Real>
Real inf_norm(const CMatrix<Real>& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace qhyp

#endif  // QHYP_LINALG_HPP
