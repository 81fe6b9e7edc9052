#include <doctest.h>

#include "qhyp/qseries.hpp"
#include "support/oracles.hpp"
#include "support/param_suite.hpp"

using namespace qhyp;
using qhyp::testing::cd;
using qhyp::testing::rel;

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

TEST_CASE("qpochhammer values") {
  CHECK(qpochhammer<double>(cd(5, 2), 0.3, 0) == cd(1.0));
  CHECK(qpochhammer<double>(2.0, 3.0, 2) == cd(5.0));
  for (int N = 0; N < 8; ++N) {
    const cd q(0.4, 0.3);
    const cd g = std::pow(q, -N);
    double scale = 1;
    for (int i = 0; i <= N; ++i) scale *= 1 + std::abs(g * std::pow(q, i));
    CHECK(std::abs(qpochhammer<double>(g, q, N + 1)) < 1e-14 * scale);
  }
}

TEST_CASE("qpochhammer recurrence is exact") {
  const cd g(0.7, -0.2), q(0.55, 0.35);
  for (int m = 0; m < 20; ++m) {
    const cd next = qpochhammer<double>(g, q, m + 1);
    const cd step = qpochhammer<double>(g, q, m) * (cd(1) - g * ipow(q, m));
    CHECK(next == step);
  }
}

TEST_CASE("coefficients, small cases") {
  const cd q(0.5, 0.2);
  const auto p1 = coeffs_P(make(1, q));
  REQUIRE(p1.coeffs.size() == 2);
  CHECK(p1.coeffs[0] == cd(1.0));
  CHECK(rel(p1.coeffs[1], -1.0 / q) < 1e-15);
  CHECK_FALSE(p1.monic);

  const auto p2 = coeffs_P(make(2, 2.0));
  CHECK(rel(p2.coeffs[0], 1.0) == 0.0);
  CHECK(rel(p2.coeffs[1], -0.75) < 1e-15);
  // (q^-2 z; q)_2 = (1 - z/4)(1 - z/2), so the top coefficient is 1/8
  CHECK(rel(p2.coeffs[2], 0.125) < 1e-15);
}

TEST_CASE("coefficients match term-by-term oracle on the suite") {
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto c = coeffs_P(e.params).coeffs;
    const auto ref = testing::direct_coeffs(e.params);
    REQUIRE(c.size() == ref.size());
    CHECK(c[0] == cd(1.0));
    CHECK(std::abs(c.back()) > 0.0);
    for (std::size_t m = 0; m < c.size(); ++m)
      CHECK(std::abs(c[m] - ref[m]) <= 1e-11 * std::abs(ref[m]));
  }
}

TEST_CASE("q-binomial theorem: r = s = 0 polynomial is (q^-N z; q)_N") {
  const cd q(0.45, -0.3);
  for (int N = 1; N <= 9; ++N) {
    const auto p = coeffs_P(make(N, q));
    for (const cd z : {cd(0.3, 0.1), cd(-1.2, 0.5), cd(0.05, -0.9)}) {
      const cd expected = testing::poch(std::pow(q, -N) * z, q, N);
      CHECK(std::abs(eval_poly(p, z) - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("to_monic") {
  const cd q(0.5, 0.2);
  const auto m = to_monic(coeffs_P(make(1, q)));
  CHECK(m.monic);
  CHECK(m.coeffs[1] == cd(1.0));
  CHECK(rel(m.coeffs[0], -q) < 1e-15);

  Poly<double> p{{2.0, 0.0, 4.0}, false};
  const auto pm = to_monic(p);
  CHECK(pm.coeffs[0] == cd(0.5));
  CHECK(pm.coeffs[1] == cd(0.0));
  CHECK(pm.coeffs[2] == cd(1.0));
  CHECK(to_monic(pm).coeffs == pm.coeffs);

  Poly<double> bad{{1.0, 0.0}, false};
  CHECK_THROWS_AS(to_monic(bad), Error);
}

TEST_CASE("monic form agrees with the explicit prefactor") {
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto m = monic_poly(e.params);
    CHECK(m.coeffs.back() == cd(1.0));
    const cd pref = testing::monic_prefactor(e.params);
    const auto raw = coeffs_P(e.params).coeffs;
    double cmax = 0;
    for (auto c : m.coeffs) cmax = std::max(cmax, std::abs(c));
    for (std::size_t k = 0; k < raw.size(); ++k)
      CHECK(std::abs(raw[k] * pref - m.coeffs[k]) <= 1e-10 * std::max(std::abs(m.coeffs[k]), 1e-300) + 1e-14 * cmax);
  }
}

TEST_CASE("evaluation") {
  const cd q(0.5, 0.2);
  Poly<double> lin{{-q, 1.0}, true};
  CHECK(std::abs(eval_poly(lin, q)) == 0.0);
  Poly<double> quad{{1.0, -0.75, 0.25}, false};
  CHECK(std::abs(eval_poly(quad, cd(2.0)) - 0.5) < 1e-15);
  CHECK(eval_poly(quad, cd(0.0)) == cd(1.0));
  const auto [v, d] = eval_poly_and_derivative(quad, cd(2.0));
  CHECK(std::abs(v - 0.5) < 1e-15);
  CHECK(std::abs(d - 0.25) < 1e-15);  // -0.75 + 0.5 z
}

TEST_CASE("overflow guard") {
  CHECK_THROWS_AS(coeffs_P(make(40, 0.05)), Error);
  try {
    coeffs_P(make(40, 0.05));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverflowRisk);
  }
}

TEST_CASE("terminating series equals the polynomial") {
  for (const auto& e : testing::param_suite()) {
    CAPTURE(e.label);
    const auto& p = e.params;
    std::vector<cd> full{std::pow(p.q, -p.N)};
    full.insert(full.end(), p.alpha.begin(), p.alpha.end());
    const auto poly = coeffs_P(p);
    for (const cd z : {cd(0.3, 0.2), cd(-0.8, 0.1)}) {
      const cd val = eval_phi<double>(full, p, z, 1e-16);
      const cd ref = eval_poly(poly, z);
      double scale = 0;
      for (std::size_t m = 0; m < poly.coeffs.size(); ++m) scale = std::max(scale, std::abs(poly.coeffs[m] * std::pow(z, m)));
      CHECK(std::abs(val - ref) <= 1e-12 * std::max(scale, 1.0));
    }
  }
  const auto p = make(3, 0.4, {0.7});
  const std::vector<cd> full{std::pow(cd(0.4), -3), 0.7};
  CHECK(eval_phi<double>(full, p, cd(0.0), 1e-16) == cd(1.0));
}

TEST_CASE("non-terminating series against partial sums and the q-binomial product") {
  const auto p = make(1, 0.5);
  const std::vector<cd> a{0.5};
  const cd z(0.1);
  const cd val = eval_phi<double>(a, p, z, 1e-17);
  cd brute = 0.0, term = 1.0;
  for (int k = 0; k < 200; ++k) {
    brute += term;
    term *= (1.0 - 0.5 * std::pow(0.5, k)) / (1.0 - std::pow(0.5, k + 1)) * z;
  }
  CHECK(std::abs(val - brute) < 1e-12);
  // sum (a;q)_k/(q;q)_k z^k = (az;q)_inf / (z;q)_inf
  const cd closed = testing::poch_inf(0.5 * z, 0.5) / testing::poch_inf(z, 0.5);
  CHECK(std::abs(val - closed) < 1e-12);
}

TEST_CASE("series argument checks") {
  const auto p = make(2, 0.5, {0.3});
  const std::vector<cd> wrong{0.1};
  CHECK_THROWS_AS(eval_phi<double>(wrong, p, cd(0.2), 1e-14), Error);
  // |z| > 1 with |q| < 1 and no termination: terms grow
  const auto p0 = make(1, 0.5);
  const std::vector<cd> a{0.5};
  CHECK_THROWS_AS(eval_phi<double>(a, p0, cd(3.0), 1e-14), Error);
}

TEST_CASE("extended precision path") {
  const auto p = convert_params<long double>(testing::param_suite()[9].params);
  const auto m = monic_poly(p);
  CHECK(m.coeffs.back() == Complex<long double>(1));
  const auto pd = monic_poly(testing::param_suite()[9].params);
  for (std::size_t k = 0; k < m.coeffs.size(); ++k) {
    const cd c(static_cast<double>(m.coeffs[k].real()), static_cast<double>(m.coeffs[k].imag()));
    CHECK(std::abs(c - pd.coeffs[k]) <= 1e-11 * std::max(1.0, std::abs(c)));
  }
}
