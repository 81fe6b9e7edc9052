#include "qhyp/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhyp/hungarian.hpp"
#include "qhyp/linalg.hpp"

namespace qhyp {

namespace {

template <class Real>
Real horner_bound(const Poly<Real>& p, const Complex<Real>& z) {
  const Real az = std::abs(z);
  Real acc = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

template <class Real>
std::vector<Complex<Real>> spiral_start(const Poly<Real>& p, Real q_abs) {
  const int n = p.degree();
  Real rho = std::pow(std::abs(p.coeffs.front()), Real(1) / n);
  if (!(rho > 0) || !std::isfinite(rho)) rho = 1;
  if (!(q_abs > 0) || !std::isfinite(q_abs)) q_abs = 1;
  const Real ratio = Real(1) / std::sqrt(q_abs);
  std::vector<Complex<Real>> z(n);
  for (int k = 1; k <= n; ++k) {
    const Real phase = 2 * std::numbers::pi_v<Real> * (k + Real(0.37)) / n;
    z[k - 1] = std::polar(rho * std::pow(ratio, Real(k - 1)), phase);
  }
  return z;
}

}  // namespace

template <class Real>
void sort_canonical(std::vector<Complex<Real>>& zeros) {
  std::sort(zeros.begin(), zeros.end(), [](const Complex<Real>& a, const Complex<Real>& b) {
    const Real ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
}

template <class Real>
ZeroSet<Real> find_zeros(const Poly<Real>& p, Real q_abs, const RootfindOptions& options) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::DegreeMismatch, "root finding needs degree >= 1");
  if (!p.monic && p.leading() != Complex<Real>(1))
    throw Error(ErrorCode::ZeroLeadingCoefficient, "find_zeros expects a monic polynomial");

  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real step_tol = Real(options.step_tol) * precision_ratio<Real>();

  ZeroSet<Real> out;
  std::vector<Complex<Real>> z = spiral_start(p, q_abs);
  std::vector<char> done(n, false);
  bool converged = false;
  int sweep = 0;
  while (!converged && sweep < options.max_sweeps) {
    ++sweep;
    converged = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto [value, deriv] = eval_poly_and_derivative(p, z[i]);
      if (std::abs(value) <= Real(4 * n) * eps * horner_bound(p, z[i])) {
        done[i] = true;
        continue;
      }
      Complex<Real> repulsion(0);
      for (int j = 0; j < n; ++j)
        if (j != i) repulsion += Complex<Real>(1) / (z[i] - z[j]);
      Complex<Real> step;
      if (deriv == Complex<Real>(0)) {
        step = Complex<Real>(std::sqrt(eps) * (Real(1) + std::abs(z[i])), 0);
      } else {
        const Complex<Real> newton = value / deriv;
        step = newton / (Complex<Real>(1) - newton * repulsion);
      }
      z[i] -= step;
      if (std::abs(step) <= step_tol * std::abs(z[i])) done[i] = true;
      converged = converged && done[i];
    }
  }
  out.sweeps = sweep;

  for (auto& zi : z) {
    const auto [value, deriv] = eval_poly_and_derivative(p, zi);
    if (deriv == Complex<Real>(0)) continue;
    const Complex<Real> candidate = zi - value / deriv;
    if (std::abs(eval_poly(p, candidate)) < std::abs(value)) zi = candidate;
  }

  sort_canonical(z);

  Real max_abs = 0;
  for (const auto& zi : z) max_abs = std::max(max_abs, std::abs(zi));
  Real min_sep = std::numeric_limits<Real>::infinity();
  // Inclusion radii n |W_i| from the Weierstrass corrections: when the disks are
  // pairwise disjoint each holds exactly one zero.
  std::vector<Real> radius(n, 0);
  for (int i = 0; i < n; ++i) {
    Complex<Real> denom(1);
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= z[i] - z[j];
    radius[i] = Real(n) * std::abs(eval_poly(p, z[i]) / denom);
  }
  bool disks_disjoint = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Real d = std::abs(z[i] - z[j]);
      min_sep = std::min(min_sep, d / max_abs);
      if (!(d > radius[i] + radius[j])) disks_disjoint = false;
    }
  }
  out.min_separation = n == 1 ? Real(1) : min_sep;

  out.max_residual = 0;
  for (const auto& zi : z) {
    const auto [value, deriv] = eval_poly_and_derivative(p, zi);
    const Real denom = std::abs(deriv) * std::max(std::abs(zi), std::numeric_limits<Real>::min());
    out.max_residual = std::max(out.max_residual, std::abs(value) / denom);
  }
  out.zeros = std::move(z);

  if (!(out.min_separation > Real(options.separation_tol)) || !disks_disjoint) {
    throw Error(ErrorCode::DegenerateZeros,
                "zeros cannot be certified distinct (relative separation " +
                    std::to_string(static_cast<double>(out.min_separation)) + ")");
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Aberth iteration did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
  }
  return out;
}

template <class Real>
ZeroSet<Real> find_zeros(const Poly<Real>& p, const ParamSet<Real>& params,
                         const RootfindOptions& options) {
  if (p.degree() != params.N) {
    throw Error(ErrorCode::DegreeMismatch, "polynomial degree " + std::to_string(p.degree()) +
                                               " does not match N = " + std::to_string(params.N));
  }
  return find_zeros(p, std::abs(params.q), options);
}

template <class Real>
std::vector<Complex<Real>> companion_zeros(const Poly<Real>& p) {
  const int n = p.degree();
  CMatrix<Real> c = CMatrix<Real>::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i + 1, i) = Complex<Real>(1);
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p.coeffs[i] / p.leading();
  auto z = eigenvalues<Real>(c, true);
  sort_canonical(z);
  return z;
}

template <class Real>
Poly<Real> poly_from_zeros(std::span<const Complex<Real>> zeros) {
  Poly<Real> p;
  p.coeffs = {Complex<Real>(1)};
  for (const auto& z : zeros) {
    p.coeffs.insert(p.coeffs.begin(), Complex<Real>(0));
    for (std::size_t m = 0; m + 1 < p.coeffs.size(); ++m) p.coeffs[m] -= z * p.coeffs[m + 1];
  }
  p.monic = true;
  return p;
}

template <class Real>
Real multiset_distance(std::span<const Complex<Real>> a, std::span<const Complex<Real>> b,
                       Real floor) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch, "multisets differ in size");
  const std::size_t n = a.size();
  std::vector<std::vector<Real>> cost(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(a[i] - b[j]);
  const auto match = min_cost_assignment(cost);
  Real worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& target = b[match[i]];
    worst = std::max(worst, cost[i][match[i]] / std::max(std::abs(target), floor));
  }
  return worst;
}

#define QHYP_INSTANTIATE(Real)                                                                 \
  template void sort_canonical(std::vector<Complex<Real>>&);                                   \
  template ZeroSet<Real> find_zeros(const Poly<Real>&, Real, const RootfindOptions&);          \
  template ZeroSet<Real> find_zeros(const Poly<Real>&, const ParamSet<Real>&,                  \
                                    const RootfindOptions&);                                   \
  template std::vector<Complex<Real>> companion_zeros(const Poly<Real>&);                      \
  template Poly<Real> poly_from_zeros(std::span<const Complex<Real>>);                         \
  template Real multiset_distance(std::span<const Complex<Real>>, std::span<const Complex<Real>>, \
                                  Real);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
