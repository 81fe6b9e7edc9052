#include <doctest.h>

#include <random>

#include "qhyp/qdifference.hpp"
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


}  // namespace

TEST_CASE("dilation") {
  Poly<double> c{{cd(3, 1)}, false};
  CHECK(apply_delta(c, cd(0.7)).coeffs == c.coeffs);
  Poly<double> z{{0.0, 1.0}, false};
  CHECK(apply_delta(z, cd(3.0)).coeffs == std::vector<cd>{0.0, 3.0});
  Poly<double> ones{{1.0, 1.0, 1.0}, true};
  const auto d = apply_delta(ones, cd(2.0));
  CHECK(d.coeffs == std::vector<cd>{1.0, 2.0, 4.0});
  CHECK_FALSE(d.monic);
}

TEST_CASE("shifted dilation") {
  Poly<double> c{{cd(3, 1)}, false};
  CHECK(apply_Delta<double>({1.0}, c, cd(0.7)).coeffs == std::vector<cd>{0.0});
  Poly<double> zN{{0.0, 0.0, 1.0}, true};
  const auto k = apply_Delta<double>({std::pow(cd(0.5), -2)}, zN, cd(0.5));
  CHECK(std::abs(k.coeffs[2]) == 0.0);
  // exact for any q when the operator knows it is a power of q
  const cd q(0.37, 0.61);
  Poly<double> z5{{0.0, 0.0, 0.0, 0.0, 0.0, 1.0}, true};
  CHECK(apply_Delta(DilationOp<double>::power_of_q(-5, q), z5, q).coeffs[5] == cd(0.0));
  Poly<double> ones{{1.0, 1.0}, false};
  CHECK(apply_Delta<double>({3.0}, ones, cd(2.0)).coeffs == std::vector<cd>{2.0, 5.0});
}

TEST_CASE("shifted dilations commute") {
  // dyadic data: every product is exact, so the two orders agree bit for bit
  Poly<double> d{{cd(1.5, -2), cd(0.25, 3), cd(-4, 0.5), cd(2, 2)}, false};
  const cd qd(0.5, 0.25);
  const DilationOp<double> a{cd(3, -1)}, b{cd(-0.5, 2)};
  CHECK(apply_Delta(a, apply_Delta(b, d, qd), qd).coeffs == apply_Delta(b, apply_Delta(a, d, qd), qd).coeffs);

  // general data: the orders differ only by rounding
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Poly<double> p;
  for (int i = 0; i < 7; ++i) p.coeffs.emplace_back(g(rng), g(rng));
  const cd q(0.6, 0.3);
  for (int t = 0; t < 10; ++t) {
    const DilationOp<double> x{{g(rng), g(rng)}}, y{{g(rng), g(rng)}};
    const auto u = apply_Delta(x, apply_Delta(y, p, q), q).coeffs;
    const auto v = apply_Delta(y, apply_Delta(x, p, q), q).coeffs;
    for (std::size_t m = 0; m < u.size(); ++m) CHECK(std::abs(u[m] - v[m]) <= 4e-16 * std::abs(u[m]));
  }
}

TEST_CASE("linear case is annihilated") {
  const cd q(0.5, 0.2);
  const auto p = make(1, q);
  Poly<double> lin{{-q, 1.0}, true};
  const std::vector<cd> zs{cd(0.3), cd(-1.1, 2.0), cd(7.0, -3.0)};
  for (const auto& r : qde_residual<double>(lin, p, zs)) CHECK(std::abs(r) < 1e-15);
}

TEST_CASE("monomial is not annihilated") {
  const auto p = make(3, cd(0.5, 0.1), {0.8}, {-0.3});
  Poly<double> zN{{0.0, 0.0, 0.0, 1.0}, true};
  const std::vector<cd> zs{cd(0.7, 0.2)};
  CHECK(std::abs(qde_residual<double>(zN, p, zs)[0]) > 1e-3);
}

TEST_CASE("degree mismatch") {
  const auto p = make(3, 0.5);
  Poly<double> lin{{-0.5, 1.0}, true};
  const std::vector<cd> zs{cd(1.0)};
  CHECK_THROWS_AS(qde_residual<double>(lin, p, zs), Error);
}

TEST_CASE("annihilation and expanded-form agreement on the suite") {
  int idx = 0;
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto mono = monic_poly(e.params);
    const auto zs = qde_sample_points(e.params, 20, 100 + idx++);
    for (const auto& r : qde_residual<double>(mono, e.params, zs)) CHECK(std::abs(r) < 1e-9);
    const double sign = e.params.s() % 2 ? 1.0 : -1.0;  // (-1)^{s+1}
    for (const auto& z : zs) {
      const auto op = qde_operator_form(mono, e.params, z);
      const auto ex = qde_expanded_form(mono, e.params, z);
      CHECK(std::abs(ex.value - sign * op.value) <= 1e-10 * std::max(op.scale, ex.scale));
    }
  }
}

TEST_CASE("non-solutions fail in expanded and operator form alike") {
  const auto& e = testing::param_suite()[27];
  auto mono = monic_poly(e.params);
  for (std::size_t i = 0; i + 1 < mono.coeffs.size(); ++i) mono.coeffs[i] *= i % 2 ? 1.001 : 0.999;
  const auto zs = qde_sample_points(e.params, 5, 9);
  const double sign = e.params.s() % 2 ? 1.0 : -1.0;
  for (const auto& z : zs) {
    const auto op = qde_operator_form(mono, e.params, z);
    const auto ex = qde_expanded_form(mono, e.params, z);
    CHECK(op.normalized() > 1e-7);
    CHECK(std::abs(ex.value - sign * op.value) <= 1e-10 * std::max(op.scale, ex.scale));
  }
}
