#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "qhyp/zero_flow.hpp"
#include "support/oracles.hpp"
#include "support/param_suite.hpp"

using namespace qhyp;
using qhyp::testing::cd;

namespace {

ParamSet<double> make(int N, cd q, std::vector<cd> alpha = {}, std::vector<cd> beta = {}) {
  ParamSet<double> p;
  p.N = N;
  p.q = q;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  return p;
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NoConvergence;
}

}  // namespace

TEST_CASE("triangular generator") {
  const cd q(0.5, 0.1);
  const auto C0 = build_C(make(5, q));
  for (int n = 1; n <= 5; ++n) CHECK(std::abs(C0.diag[n - 1] - (1.0 - std::pow(q, -n))) < 1e-12);
  CHECK(C0.subdiag.size() == 4);

  const cd b1(0.3, -0.8);
  const auto C1 = build_C(make(2, q, {}, {b1}));
  CHECK(std::abs(C1.subdiag[0] - (q - 1.0) * (b1 - 1.0)) < 1e-15);
  CHECK(std::abs(C1.forcing - (q * q - 1.0) * (b1 * q - 1.0)) < 1e-15);

  for (const auto& e : testing::param_suite()) {
    const auto C = build_C(e.params);
    CHECK(C.diag == mu_closed(e.params));
  }
}

TEST_CASE("eigenvectors of the generator") {
  const auto& p = testing::param_suite()[33].params;
  const auto C = build_C(p);
  const int N = C.size();
  CMatrix<double> dense = CMatrix<double>::Zero(N, N);
  for (int m = 0; m < N; ++m) dense(m, m) = C.diag[m];
  for (int m = 1; m < N; ++m) dense(m, m - 1) = C.subdiag[m - 1];
  for (int n = 0; n < N; ++n) {
    CVector<double> u(N);
    for (int m = 0; m < N; ++m) u(m) = C.eigenvectors[n][m];
    const CVector<double> resid = dense * u - C.diag[n] * u;
    CHECK(resid.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, u.cwiseAbs().maxCoeff() * std::abs(C.diag[n])));
  }
}

TEST_CASE("repeated eigenvalue") {
  // a cube root of unity gives mu_4 = mu_1; validation is bypassed
  ParamSet<double> p = make(4, std::polar(1.0, 2 * M_PI / 3));
  CHECK(code_of([&] { build_C(p); }) == ErrorCode::RepeatedEigenvalue);
}

TEST_CASE("coefficient evolution") {
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto C = build_C(e.params);
    const auto mono = monic_poly(e.params);
    const auto cbar = c_vector(mono);
    // the polynomial's own coefficients are the fixed point
    for (int m = 0; m < C.size(); ++m)
      CHECK(std::abs(C.fixed_point[m] - cbar[m]) <= 1e-10 * std::max(1.0, std::abs(cbar[m])));
    // keep exp(mu t) of order one, larger Re mu amplifies rounding of the fixed point
    double grow = 1;
    for (const auto& mu : C.diag) grow = std::max(grow, mu.real());
    const CoeffState<double> eq{cbar, 0.0};
    const auto later = evolve_coeffs(C, eq, 0.7 / grow);
    for (int m = 0; m < C.size(); ++m)
      CHECK(std::abs(later.c[m] - cbar[m]) <= 1e-9 * std::max(1.0, std::abs(cbar[m])));

    CoeffState<double> start{cbar, 0.0};
    for (auto& c : start.c) c += cd(0.01, -0.02);
    CHECK(evolve_coeffs(C, start, 0.0).c == start.c);
  }
}

TEST_CASE("one-dimensional affine solution by hand") {
  const cd q(0.6, 0.2), b(0.4, 0.3);
  const auto C = build_C(make(1, q, {}, {b}));
  const cd mu = C.diag[0];
  const cd fixed = -C.forcing / mu;
  const CoeffState<double> c0{{cd(0.3, 0.1)}, 0.0};
  for (double t : {0.1, 0.5, 2.0}) {
    const cd expect = fixed + (c0.c[0] - fixed) * std::exp(mu * t);
    CHECK(std::abs(evolve_coeffs(C, c0, t).c[0] - expect) < 1e-14);
  }
}

TEST_CASE("coefficient evolution solves the ODE") {
  // derivative by central difference against the generator
  const auto& p = testing::param_suite()[21].params;
  const auto C = build_C(p);
  const CoeffState<double> c0{{cd(0.2, 0.1), cd(-0.3, 0.05)}, 0.0};
  const double t = 0.3, h = 1e-5;
  const auto a = evolve_coeffs(C, c0, t + h).c;
  const auto b = evolve_coeffs(C, c0, t - h).c;
  const auto c = evolve_coeffs(C, c0, t).c;
  for (int m = 0; m < 2; ++m) {
    const cd lhs = (a[m] - b[m]) / (2 * h);
    const cd prev = m == 0 ? cd(1.0) : c[m - 1];
    const cd sub = m == 0 ? C.forcing : C.subdiag[m - 1];
    const cd rhs = sub * prev + C.diag[m] * c[m];
    CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("linear zero flow by hand") {
  const cd q(0.6, 0.3);
  const auto p = make(1, q);
  for (const cd z : {cd(0.2, 0.1), cd(-1.0, 2.0)}) {
    const auto v = flow_rhs(FlowState<double>{{z}, 0.0}, p);
    CHECK(std::abs(v[0] - (q - 1.0) * (z / q - 1.0)) < 1e-15);
  }
  CHECK(std::abs(flow_rhs(FlowState<double>{{q}, 0.0}, p)[0]) < 1e-16);
}

TEST_CASE("equilibrium and representation consistency") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto zs = find_zeros(monic_poly(e.params), e.params);
    const auto v = flow_rhs_scaled(FlowState<double>{zs.zeros, 0.0}, e.params);
    CHECK(v.normalized_max() < 1e-8);
    // away from equilibrium both velocity formulas agree
    std::vector<cd> z = zs.zeros;
    for (auto& x : z) x += 0.05 * std::abs(x) * cd(g(rng), g(rng));
    const auto a = flow_rhs(FlowState<double>{z, 0.0}, e.params);
    const auto b = flow_rhs_products(FlowState<double>{z, 0.0}, e.params);
    const auto sc = flow_rhs_scaled(FlowState<double>{z, 0.0}, e.params);
    for (std::size_t n = 0; n < z.size(); ++n) CHECK(std::abs(a[n] - b[n]) <= 1e-10 * sc.scales[n]);
  }
}

TEST_CASE("collision detection") {
  const auto p = make(2, 0.5);
  const FlowState<double> bad{{cd(0.3), cd(0.3 + 1e-13)}, 0.0};
  CHECK(code_of([&] { flow_rhs(bad, p); }) == ErrorCode::CollisionDetected);
  CHECK(code_of([&] { integrate_flow(p, bad, 1.0, 0.1); }) == ErrorCode::CollisionDetected);
}

TEST_CASE("jacobian matches the matrix") {
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto zs = find_zeros(monic_poly(e.params), e.params);
    const auto M = build_M(zs, e.params);
    const auto J = jacobian_fd(e.params, zs);
    CHECK_FALSE(J.consistency_warning);
    CHECK(inf_norm<double>(J.matrix - M.entries) <= 1e-5 * inf_norm<double>(M.entries));
  }
}

TEST_CASE("jacobian, linear case by hand") {
  const cd q(0.45, -0.35);
  const auto p = make(1, q);
  ZeroSet<double> zs;
  zs.zeros = {q};
  const auto J = jacobian_fd(p, zs);
  CHECK(std::abs(J.matrix(0, 0) - (q - 1.0) / q) < 1e-8);
}

TEST_CASE("jacobian convergence order in the step") {
  for (int idx : {9, 17, 28, 36}) {
    const auto& p = testing::param_suite()[idx].params;
    CAPTURE(idx);
    const auto zs = find_zeros(monic_poly(p), p);
    const auto M = build_M(zs, p);
    const auto coarse = jacobian_fd(p, zs, 4e-2);
    const auto fine = jacobian_fd(p, zs, 2e-2);
    // one axis alone is second order
    const double axis_ratio =
        inf_norm<double>(coarse.real_axis - M.entries) / inf_norm<double>(fine.real_axis - M.entries);
    CHECK(axis_ratio > 3.5);
    CHECK(axis_ratio < 4.5);
    // averaging both axes removes the h^2 term of a holomorphic function
    const double ratio = inf_norm<double>(coarse.matrix - M.entries) / inf_norm<double>(fine.matrix - M.entries);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
  }
}

TEST_CASE("integration from a stable equilibrium stays put") {
  // with Re mu > 0 rounding grows like exp(Re mu t), only contractive cases are held to the bound
  for (const auto& e : testing::param_suite()) {
    const auto& p = e.params;
    double grow = -1;
    for (const auto& mu : mu_closed(p)) grow = std::max(grow, mu.real());
    if (grow > 0) continue;
    CAPTURE(e.label);
    const auto zs = find_zeros(monic_poly(p), p);
    const auto traj = integrate_flow(p, FlowState<double>{zs.zeros, 0.0}, 1.0, 0.25);
    REQUIRE(traj.size() == 5);
    CHECK(traj.back().t == doctest::Approx(1.0));
    double drift = 0, zmax = 0;
    for (const auto& z : zs.zeros) zmax = std::max(zmax, std::abs(z));
    for (const auto& s : traj)
      for (std::size_t n = 0; n < s.z.size(); ++n) drift = std::max(drift, std::abs(s.z[n] - zs[n]));
    CHECK(drift < 1e-8 * zmax);
  }
}

TEST_CASE("zero horizon returns the start") {
  const auto p = make(2, 0.5);
  const FlowState<double> s{{cd(0.4), cd(0.2)}, 0.0};
  const auto traj = integrate_flow(p, s, 0.0, 0.1);
  REQUIRE(traj.size() == 1);
  CHECK(traj[0].z == s.z);
}

TEST_CASE("perturbed start follows the linearization") {
  // r = s = 0, 0 < q < 1: mu_n = 1 - q^-n < 0, contractive
  const auto p = make(4, 0.7);
  const auto zs = find_zeros(monic_poly(p), p);
  const auto M = build_M(zs, p);
  std::vector<cd> z0 = zs.zeros;
  CVector<double> xi0(4);
  for (int n = 0; n < 4; ++n) {
    xi0(n) = 1e-4 * std::abs(zs[n]) * cd(n % 2 ? 1.0 : -1.0, 0.5);
    z0[n] += xi0(n);
  }
  const auto traj = integrate_flow(p, FlowState<double>{z0, 0.0}, 0.5, 0.05);
  for (const auto& s : traj) {
    CVector<double> dev(4);
    for (int n = 0; n < 4; ++n) dev(n) = s.z[n] - zs[n];
    const CMatrix<double> E = (M.entries * s.t).exp();
    const double lin = (E * xi0).norm();
    CHECK(std::abs(dev.norm() - lin) <= 0.1 * lin);
  }
}

TEST_CASE("zeros and coefficients evolve consistently") {
  for (const auto& p : {make(4, 0.7), make(5, cd(0.6, 0.2), {cd(0.5, 0.1)}, {cd(-0.4, 0.3)}),
                        make(3, 0.5, {0.3, -0.6}, {0.8})}) {
    const auto C = build_C(p);
    bool contractive = true;
    for (auto m : C.diag) contractive = contractive && m.real() < 0;
    if (!contractive) continue;
    const auto zs = find_zeros(monic_poly(p), p);
    std::vector<cd> z0 = zs.zeros;
    for (std::size_t n = 0; n < z0.size(); ++n) z0[n] *= 1.0 + 1e-3 * cd(1.0, double(n));
    const CoeffState<double> c0{c_vector(poly_from_zeros<double>(z0)), 0.0};
    const auto traj = integrate_flow(p, FlowState<double>{z0, 0.0}, 0.5, 0.1);
    for (const auto& s : traj) {
      const auto fromz = c_vector(poly_from_zeros<double>(s.z));
      const auto fromc = evolve_coeffs(C, c0, s.t).c;
      for (std::size_t m = 0; m < fromz.size(); ++m)
        CHECK(std::abs(fromz[m] - fromc[m]) <= 1e-6 * std::max(1.0, std::abs(fromc[m])));
    }
  }
}
