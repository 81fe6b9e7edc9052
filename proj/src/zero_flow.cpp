#include "qhyp/zero_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhyp/ode.hpp"

namespace qhyp {

template <class Real>
TriangularC<Real> build_C(const ParamSet<Real>& params) {
  using C = Complex<Real>;
  const int N = params.N;
  const C q = params.q;
  const C one(1);
  TriangularC<Real> out;
  out.diag = mu_formula<C>(q, params.alpha, N, params.r(), params.s());
  auto sub = [&](int m) {
    C v = ipow(q, N - m + 1) - one;
    const C qNm = ipow(q, N - m);
    for (const auto& b : params.beta) v *= b * qNm - one;
    return v;
  };
  out.forcing = sub(1);
  for (int m = 2; m <= N; ++m) out.subdiag.push_back(sub(m));

  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const Real scale = std::max({Real(1), std::abs(out.diag[i]), std::abs(out.diag[j])});
      if (std::abs(out.diag[i] - out.diag[j]) <= Real(kRepeatedEigenTol) * scale)
        throw Error(ErrorCode::RepeatedEigenvalue,
                    "diagonal entries " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
    }

  // u_m = sub_m u_{m-1} / (mu_n - mu_m) below the unit entry.
  out.eigenvectors.assign(N, std::vector<C>(N, C(0)));
  for (int n = 0; n < N; ++n) {
    auto& u = out.eigenvectors[n];
    u[n] = one;
    for (int m = n + 1; m < N; ++m) u[m] = out.subdiag[m - 1] * u[m - 1] / (out.diag[n] - out.diag[m]);
  }

  out.fixed_point.resize(N);
  C prev = one;
  for (int m = 0; m < N; ++m) {
    const C s = m == 0 ? out.forcing : out.subdiag[m - 1];
    out.fixed_point[m] = -s * prev / out.diag[m];
    prev = out.fixed_point[m];
  }
  return out;
}

template <class Real>
CoeffState<Real> evolve_coeffs(const TriangularC<Real>& C, const CoeffState<Real>& c0, Real t) {
  using Cx = Complex<Real>;
  const int N = C.size();
  if (static_cast<int>(c0.c.size()) != N)
    throw Error(ErrorCode::LengthMismatch, "coefficient state has " + std::to_string(c0.c.size()) +
                                               " entries, expected " + std::to_string(N));
  if (t == 0) return CoeffState<Real>{c0.c, c0.t};
  // eta from the unit lower-triangular system sum_n eta_n u^{(n)} = c0 - fixed point
  std::vector<Cx> eta(N);
  for (int m = 0; m < N; ++m) {
    Cx v = c0.c[m] - C.fixed_point[m];
    for (int n = 0; n < m; ++n) v -= eta[n] * C.eigenvectors[n][m];
    eta[m] = v;
  }
  CoeffState<Real> out{C.fixed_point, c0.t + t};
  for (int n = 0; n < N; ++n) {
    const Cx w = eta[n] * std::exp(C.diag[n] * t);
    for (int m = n; m < N; ++m) out.c[m] += w * C.eigenvectors[n][m];
  }
  return out;
}

template <class Real>
std::vector<Complex<Real>> c_vector(const Poly<Real>& monic) {
  const int N = monic.degree();
  std::vector<Complex<Real>> c(N);
  for (int m = 1; m <= N; ++m) c[m - 1] = monic.coeffs[N - m];
  return c;
}

template <class Real>
Real FlowVelocity<Real>::normalized_max() const {
  Real worst = 0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    const Real a = std::abs(values[n]);
    worst = std::max(worst, scales[n] > 0 ? a / scales[n] : a);
  }
  return worst;
}

template <class Real>
void check_distinct(std::span<const Complex<Real>> z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const Real scale = std::max({std::abs(z[i]), std::abs(z[j]), std::numeric_limits<Real>::min()});
      if (!(std::abs(z[i] - z[j]) > Real(kCollisionTol) * scale))
        throw Error(ErrorCode::CollisionDetected,
                    "positions " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " collide");
    }
}

namespace {

// Velocity written as sum_p (A_p + z_n B_p)(q^p - 1) f_n(p) over the shift range.
template <class Real>
struct ShiftWeights {
  int p_min = 0;
  std::vector<Complex<Real>> A, B;

  Complex<Real>& a(int p) { return A[p - p_min]; }
  Complex<Real>& b(int p) { return B[p - p_min]; }
};

template <class Real>
ShiftWeights<Real> shift_weights(const ParamSet<Real>& params) {
  using C = Complex<Real>;
  const int r = params.r(), s = params.s(), d = s - r;
  const auto [lo, hi] = shift_range(r, s);
  ShiftWeights<Real> w{lo, std::vector<C>(hi - lo + 1, C(0)), std::vector<C>(hi - lo + 1, C(0))};
  const auto sym = elem_sym(params);
  const C q = params.q;
  const C qmN = ipow(q, -params.N);
  const Real sa = sign_pow<Real>(s + 1), sb = sign_pow<Real>(r);
  w.a(1) += sa;
  for (int k = 1; k <= s; ++k) {
    const C c = sa * sym.b[k - 1] * sign_pow<Real>(k) * ipow(q, -k);
    w.a(k + 1) += c;
    w.a(k) -= c;
  }
  w.b(d + 1) += sb * qmN;
  w.b(d) -= sb;
  for (int j = 1; j <= r; ++j) {
    const C c = sb * sym.a[j - 1] * sign_pow<Real>(j);
    w.b(j + d + 1) += c * qmN;
    w.b(j + d) -= c;
  }
  return w;
}

}  // namespace

template <class Real>
FlowVelocity<Real> flow_rhs_scaled(const FlowState<Real>& state, const ParamSet<Real>& params) {
  using C = Complex<Real>;
  std::span<const C> z(state.z);
  check_distinct(z);
  const auto w = shift_weights(params);
  const int N = static_cast<int>(z.size());
  const int p_max = w.p_min + static_cast<int>(w.A.size()) - 1;
  const KernelCache<Real> K(z, params.q, w.p_min, p_max);
  FlowVelocity<Real> out{std::vector<C>(N, C(0)), std::vector<Real>(N, Real(0))};
  for (int n = 0; n < N; ++n) {
    for (int p = w.p_min; p <= p_max; ++p) {
      const C qp = ipow(params.q, p);
      const C qp1 = qp - C(1);
      const C weight = (w.A[p - w.p_min] + z[n] * w.B[p - w.p_min]) * qp1;
      out.values[n] += weight * K.f(p, n);
      // |f_n(p)| bounded by prod (|q^p z_n| + |z_l|) / |z_n - z_l|
      Real bound(1);
      for (int l = 0; l < N; ++l)
        if (l != n) bound *= (std::abs(qp * z[n]) + std::abs(z[l])) / std::abs(z[n] - z[l]);
      const Real mag = (std::abs(w.A[p - w.p_min]) + std::abs(z[n] * w.B[p - w.p_min])) * std::abs(qp1);
      out.scales[n] = std::max(out.scales[n], mag * bound);
    }
  }
  return out;
}

template <class Real>
std::vector<Complex<Real>> flow_rhs(const FlowState<Real>& state, const ParamSet<Real>& params) {
  return flow_rhs_scaled(state, params).values;
}

template <class Real>
std::vector<Complex<Real>> flow_rhs_products(const FlowState<Real>& state, const ParamSet<Real>& params) {
  using C = Complex<Real>;
  std::span<const C> z(state.z);
  check_distinct(z);
  const int N = static_cast<int>(z.size());
  const int r = params.r(), s = params.s(), d = s - r;
  const C q = params.q;
  const C qmN = ipow(q, -params.N);
  const auto sym = elem_sym(params);
  auto psi = [&](const C& x) {
    C acc(1);
    for (const auto& zl : z) acc *= x - zl;
    return acc;
  };
  std::vector<C> out(N);
  for (int n = 0; n < N; ++n) {
    const C zn = z[n];
    auto at = [&](int k) { return psi(ipow(q, k) * zn); };
    C beta_group = at(1) - psi(zn);
    for (int k = 1; k <= s; ++k)
      beta_group += sym.b[k - 1] * sign_pow<Real>(k) * ipow(q, -k) * (at(k + 1) - at(k));
    C alpha_group = qmN * at(d + 1) - at(d);
    for (int j = 1; j <= r; ++j) alpha_group += sym.a[j - 1] * sign_pow<Real>(j) * (qmN * at(j + d + 1) - at(j + d));
    const C rhs = sign_pow<Real>(s) * beta_group / zn - sign_pow<Real>(r) * alpha_group;
    C denom(1);
    for (int l = 0; l < N; ++l)
      if (l != n) denom *= zn - z[l];
    out[n] = -rhs / denom;
  }
  return out;
}

template <class Real>
JacobianFD<Real> jacobian_fd(const ParamSet<Real>& params, std::span<const Complex<Real>> z, Real h) {
  using C = Complex<Real>;
  const int N = static_cast<int>(z.size());
  JacobianFD<Real> out;
  out.matrix = CMatrix<Real>(N, N);
  CMatrix<Real> dx(N, N), dy(N, N);
  FlowState<Real> st{std::vector<C>(z.begin(), z.end()), Real(0)};
  for (int m = 0; m < N; ++m) {
    const Real step = std::abs(z[m]) > 0 ? h * std::abs(z[m]) : h;
    for (int axis = 0; axis < 2; ++axis) {
      const C e = axis == 0 ? C(step, 0) : C(0, step);
      st.z[m] = z[m] + e;
      const auto plus = flow_rhs(st, params);
      st.z[m] = z[m] - e;
      const auto minus = flow_rhs(st, params);
      st.z[m] = z[m];
      auto& D = axis == 0 ? dx : dy;
      for (int n = 0; n < N; ++n) D(n, m) = (plus[n] - minus[n]) / (Real(2) * step);
    }
  }
  const C i(0, 1);
  // holomorphic: d/dy = i d/dx
  out.matrix = (dx - i * dy) / Real(2);
  out.real_axis = dx;
  const Real norm = std::max(max_abs_entry<Real>(dx), std::numeric_limits<Real>::min());
  out.consistency_defect = max_abs_entry<Real>(dy - i * dx) / norm;
  out.consistency_warning = out.consistency_defect > Real(kConsistencyTol);
  return out;
}

template <class Real>
std::vector<FlowState<Real>> integrate_flow(const ParamSet<Real>& params, const FlowState<Real>& z0, Real t_end,
                                            Real dt_max, const FlowOptions<Real>& opts) {
  using C = Complex<Real>;
  check_distinct(std::span<const C>(z0.z));
  std::vector<FlowState<Real>> samples{z0};
  if (!(t_end > 0)) return samples;
  if (!(dt_max > 0)) dt_max = t_end;

  Real zmax = 0;
  for (const auto& v : z0.z) zmax = std::max(zmax, std::abs(v));
  Dopri5Options<Real> ode;
  ode.rtol = opts.rtol;
  ode.atol = opts.atol_rel * std::max(zmax, Real(1e-300));
  ode.h_init = std::min(dt_max, t_end) / Real(16);
  const std::function<std::vector<C>(Real, const std::vector<C>&)> rhs =
      [&params](Real, const std::vector<C>& y) { return flow_rhs(FlowState<Real>{y, Real(0)}, params); };

  std::vector<C> y = z0.z;
  Real h = 0;
  const long count = static_cast<long>(std::ceil(t_end / dt_max - Real(1e-12)));
  Real t = 0;
  for (long k = 1; k <= count; ++k) {
    const Real next = k == count ? t_end : Real(k) * dt_max;
    dopri5_integrate<Real>(rhs, y, t, next, h, ode);
    t = next;
    check_distinct(std::span<const C>(y));
    samples.push_back(FlowState<Real>{y, z0.t + t});
  }
  return samples;
}

#define QHYP_INSTANTIATE(Real)                                                                               \
  template TriangularC<Real> build_C(const ParamSet<Real>&);                                                  \
  template CoeffState<Real> evolve_coeffs(const TriangularC<Real>&, const CoeffState<Real>&, Real);           \
  template std::vector<Complex<Real>> c_vector(const Poly<Real>&);                                            \
  template struct FlowVelocity<Real>;                                                                         \
  template void check_distinct(std::span<const Complex<Real>>);                                               \
  template std::vector<Complex<Real>> flow_rhs(const FlowState<Real>&, const ParamSet<Real>&);                \
  template FlowVelocity<Real> flow_rhs_scaled(const FlowState<Real>&, const ParamSet<Real>&);                 \
  template std::vector<Complex<Real>> flow_rhs_products(const FlowState<Real>&, const ParamSet<Real>&);       \
  template JacobianFD<Real> jacobian_fd(const ParamSet<Real>&, std::span<const Complex<Real>>, Real);         \
  template std::vector<FlowState<Real>> integrate_flow(const ParamSet<Real>&, const FlowState<Real>&, Real,   \
                                                       Real, const FlowOptions<Real>&);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
