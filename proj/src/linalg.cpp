#include "qhyp/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace qhyp {

template <class Real>
CMatrix<Real> balance(const CMatrix<Real>& a) {
  CMatrix<Real> b = a;
  const Eigen::Index n = b.rows();
  const Real radix = 2;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Real col = 0, row = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(b(j, i));
        row += std::abs(b(i, j));
      }
      if (col == 0 || row == 0) continue;
      Real g = row / radix;
      Real f = 1;
      const Real total = col + row;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix * radix;
      }
      // col now carries the factor f^2, so (col + row) / f is the scaled sum.
      if ((col + row) / f < Real(0.95) * total) {
        done = false;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return b;
}

template <class Real>
std::vector<Complex<Real>> eigenvalues(const CMatrix<Real>& a, bool balanced) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix<Real>> solver(balanced ? balance(a) : a, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenNoConvergence, "complex QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

template <class Real>
Complex<Real> wrap_phase(Complex<Real> z) {
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  Real phase = std::remainder(z.imag(), two_pi);
  if (phase <= -std::numbers::pi_v<Real>) phase += two_pi;
  return {z.real(), phase};
}

}  // namespace

template <class Real>
Complex<Real> log_det(const CMatrix<Real>& a) {
  Eigen::PartialPivLU<CMatrix<Real>> lu(a);
  const CMatrix<Real>& u = lu.matrixLU();
  Complex<Real> acc(0);
  for (Eigen::Index i = 0; i < u.rows(); ++i) acc += std::log(u(i, i));
  if (lu.permutationP().determinant() < 0) acc += Complex<Real>(0, std::numbers::pi_v<Real>);
  return wrap_phase(acc);
}

template <class Real>
Complex<Real> log_product(std::span<const Complex<Real>> values) {
  Complex<Real> acc(0);
  for (const auto& v : values) acc += std::log(v);
  return wrap_phase(acc);
}

template <class Real>
Real log_relative_gap(const Complex<Real>& lhs, const Complex<Real>& rhs) {
  const Complex<Real> d = wrap_phase(lhs - rhs);
  return std::abs(std::exp(d) - Complex<Real>(1));
}

#define QHYP_INSTANTIATE(Real)                                                          \
  template CMatrix<Real> balance(const CMatrix<Real>&);                                 \
  template std::vector<Complex<Real>> eigenvalues(const CMatrix<Real>&, bool);          \
  template Complex<Real> log_det(const CMatrix<Real>&);                                 \
  template Complex<Real> log_product(std::span<const Complex<Real>>);                   \
  template Real log_relative_gap(const Complex<Real>&, const Complex<Real>&);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
