#ifndef QHYP_ZERO_FLOW_HPP
#define QHYP_ZERO_FLOW_HPP

#include <span>
#include <vector>

#include "qhyp/linalg.hpp"
#include "qhyp/isospectral.hpp"
#include "qhyp/zero_algebra.hpp"

namespace qhyp {

/// Coefficients c_1..c_N of z^N + sum c_m z^{N-m}; c_0 = 1 is implicit.
template <class Real>
struct CoeffState {
  std::vector<Complex<Real>> c;
  Real t = 0;
};

/// Lower-bidiagonal generator of the coefficient dynamics
///   dc_m/dt = sub_m c_{m-1} + diag_m c_m,  m = 1..N, c_0 = 1,
/// with its eigenvectors and the affine fixed point. Index 0 holds m = 1.
template <class Real>
struct TriangularC {
  std::vector<Complex<Real>> diag;
  std::vector<Complex<Real>> subdiag;  // sub_m for m = 2..N
  Complex<Real> forcing;               // sub_1, multiplies c_0 = 1
  std::vector<std::vector<Complex<Real>>> eigenvectors;  // eigenvectors[n][m], zero for m < n
  std::vector<Complex<Real>> fixed_point;

  int size() const { return static_cast<int>(diag.size()); }
};

inline constexpr double kRepeatedEigenTol = 1e-12;

/// Throws Error{RepeatedEigenvalue} when two diagonal entries coincide.
template <class Real>
TriangularC<Real> build_C(const ParamSet<Real>& params);

/// Closed-form solution at time t (mode expansion around the fixed point).
template <class Real>
CoeffState<Real> evolve_coeffs(const TriangularC<Real>& C, const CoeffState<Real>& c0, Real t);

/// c-vector of a monic polynomial given in ascending coefficients.
template <class Real>
std::vector<Complex<Real>> c_vector(const Poly<Real>& monic);

template <class Real>
struct FlowState {
  std::vector<Complex<Real>> z;
  Real t = 0;
};

inline constexpr double kCollisionTol = 1e-10;

/// Velocity of every zero, with the largest term in each sum (for scaling).
template <class Real>
struct FlowVelocity {
  std::vector<Complex<Real>> values;
  std::vector<Real> scales;

  /// max_n |v_n| / scale_n
  Real normalized_max() const;
};

/// Throws Error{CollisionDetected} if two positions are closer than
/// kCollisionTol relative to their magnitude.
template <class Real>
void check_distinct(std::span<const Complex<Real>> z);

template <class Real>
std::vector<Complex<Real>> flow_rhs(const FlowState<Real>& state, const ParamSet<Real>& params);

template <class Real>
FlowVelocity<Real> flow_rhs_scaled(const FlowState<Real>& state, const ParamSet<Real>& params);

/// The same velocities from point evaluations of psi(w) = prod (w - z_l) at
/// q^k z_n, divided by -prod_{l != n} (z_n - z_l).
template <class Real>
std::vector<Complex<Real>> flow_rhs_products(const FlowState<Real>& state, const ParamSet<Real>& params);

template <class Real>
struct JacobianFD {
  CMatrix<Real> matrix;      // average of both axes, the h^2 terms cancel
  CMatrix<Real> real_axis;   // central difference along the real axis alone
  Real consistency_defect = 0;  // real vs imaginary direction disagreement
  bool consistency_warning = false;
};

inline constexpr double kJacobianStep = 1e-6;
inline constexpr double kConsistencyTol = 1e-6;

/// Central differences of flow_rhs at the given configuration. The step for
/// coordinate m is h * |z_m| (h itself if z_m = 0).
template <class Real>
JacobianFD<Real> jacobian_fd(const ParamSet<Real>& params, std::span<const Complex<Real>> z,
                             Real h = Real(kJacobianStep));

template <class Real>
JacobianFD<Real> jacobian_fd(const ParamSet<Real>& params, const ZeroSet<Real>& zeros,
                             Real h = Real(kJacobianStep)) {
  return jacobian_fd(params, std::span<const Complex<Real>>(zeros.zeros), h);
}

template <class Real>
struct FlowOptions {
  Real rtol = Real(1e-10);
  Real atol_rel = Real(1e-14);  // times max |z0|
};

/// Samples at t = 0, dt_max, 2 dt_max, ..., t_end. Throws
/// Error{CollisionDetected} or Error{StepUnderflow}.
template <class Real>
std::vector<FlowState<Real>> integrate_flow(const ParamSet<Real>& params, const FlowState<Real>& z0,
                                            Real t_end, Real dt_max,
                                            const FlowOptions<Real>& opts = FlowOptions<Real>{});

}  // namespace qhyp

#endif  // QHYP_ZERO_FLOW_HPP
