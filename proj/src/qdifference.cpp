#include "qhyp/qdifference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qhyp {

template <class Real>
Poly<Real> apply_delta(const Poly<Real>& p, const Complex<Real>& q) {
  Poly<Real> out = p;
  for (std::size_t m = 0; m < out.coeffs.size(); ++m) out.coeffs[m] *= ipow(q, static_cast<int>(m));
  out.monic = false;
  return out;
}

template <class Real>
Poly<Real> apply_Delta(const DilationOp<Real>& op, const Poly<Real>& p, const Complex<Real>& q) {
  Poly<Real> out = p;
  for (std::size_t m = 0; m < out.coeffs.size(); ++m) {
    const int mi = static_cast<int>(m);
    out.coeffs[m] *= op.q_exponent ? ipow(q, *op.q_exponent + mi) - Complex<Real>(1)
                                   : op.gamma * ipow(q, mi) - Complex<Real>(1);
  }
  out.monic = false;
  return out;
}

namespace {

template <class Real>
void check_degree(const Poly<Real>& p, const ParamSet<Real>& params) {
  if (p.degree() != params.N) {
    throw Error(ErrorCode::DegreeMismatch, "polynomial degree " + std::to_string(p.degree()) +
                                               " does not match N = " + std::to_string(params.N));
  }
}

// Evaluates sum c_m z^m and tracks the largest |c_m z^m|.
template <class Real>
void accumulate(const Poly<Real>& p, const Complex<Real>& z, const Complex<Real>& weight,
                ResidualEval<Real>& out) {
  Complex<Real> zm(1);
  for (const auto& c : p.coeffs) {
    const Complex<Real> term = weight * c * zm;
    out.value += term;
    out.scale = std::max(out.scale, std::abs(term));
    zm *= z;
  }
}

}  // namespace

template <class Real>
ResidualEval<Real> qde_operator_form(const Poly<Real>& p, const ParamSet<Real>& params,
                                     const Complex<Real>& z) {
  check_degree(p, params);
  const auto& q = params.q;

  Poly<Real> lhs = apply_Delta(DilationOp<Real>::power_of_q(0, q), p, q);
  for (const auto& b : params.beta) lhs = apply_Delta(DilationOp<Real>{b / q}, lhs, q);

  // p(z q^{s-r}) in the coefficient basis.
  Poly<Real> rhs = p;
  const Complex<Real> shift = ipow(q, params.s() - params.r());
  for (std::size_t m = 0; m < rhs.coeffs.size(); ++m) rhs.coeffs[m] *= ipow(shift, static_cast<int>(m));
  rhs = apply_Delta(DilationOp<Real>::power_of_q(-params.N, q), rhs, q);
  for (const auto& a : params.alpha) rhs = apply_Delta(DilationOp<Real>{a}, rhs, q);

  ResidualEval<Real> out{Complex<Real>(0), Real(0)};
  accumulate(lhs, z, Complex<Real>(1), out);
  accumulate(rhs, z, -z, out);
  return out;
}

template <class Real>
ResidualEval<Real> qde_expanded_form(const Poly<Real>& p, const ParamSet<Real>& params,
                                     const Complex<Real>& z) {
  check_degree(p, params);
  const auto& q = params.q;
  const int r = params.r();
  const int s = params.s();
  const auto sym = elem_sym(params);
  const Complex<Real> qmN = ipow(q, -params.N);
  const Complex<Real> sigma = sign_pow<Real>(r - s);

  ResidualEval<Real> out{Complex<Real>(0), Real(0)};
  auto add = [&](const Complex<Real>& weight, int shift) {
    const Complex<Real> term = weight * eval_poly(p, z * ipow(q, shift));
    out.value += term;
    out.scale = std::max(out.scale, std::abs(term));
  };

  add(Complex<Real>(1), 0);
  add(Complex<Real>(-1), 1);
  for (int k = 1; k <= s; ++k) {
    const Complex<Real> w = ipow(-q, -k) * sym.b[k - 1];
    add(w, k);
    add(-w, k + 1);
  }
  add(-sigma * z, s - r);
  add(sigma * z * qmN, s - r + 1);
  for (int j = 1; j <= r; ++j) {
    const Complex<Real> w = sign_pow<Real>(j) * sym.a[j - 1];
    add(-sigma * z * w, s - r + j);
    add(sigma * z * qmN * w, s - r + j + 1);
  }
  return out;
}

template <class Real>
std::vector<Complex<Real>> qde_residual(const Poly<Real>& p, const ParamSet<Real>& params,
                                        std::span<const Complex<Real>> zs) {
  std::vector<Complex<Real>> out;
  out.reserve(zs.size());
  for (const auto& z : zs) {
    const auto eval = qde_operator_form(p, params, z);
    out.push_back(eval.scale > 0 ? eval.value / eval.scale : eval.value);
  }
  return out;
}

template <class Real>
std::vector<Complex<Real>> qde_sample_points(const ParamSet<Real>& params, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double radius =
      std::max(1.0, std::pow(static_cast<double>(std::abs(params.q)), -static_cast<double>(params.N)));
  std::vector<Complex<Real>> z;
  for (int i = 0; i < count; ++i) {
    const auto w = std::polar(radius * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
    z.emplace_back(static_cast<Real>(w.real()), static_cast<Real>(w.imag()));
  }
  return z;
}

#define QHYP_INSTANTIATE(Real)                                                                   \
  template Poly<Real> apply_delta(const Poly<Real>&, const Complex<Real>&);                       \
  template Poly<Real> apply_Delta(const DilationOp<Real>&, const Poly<Real>&, const Complex<Real>&); \
  template ResidualEval<Real> qde_operator_form(const Poly<Real>&, const ParamSet<Real>&,         \
                                                const Complex<Real>&);                            \
  template ResidualEval<Real> qde_expanded_form(const Poly<Real>&, const ParamSet<Real>&,         \
                                                const Complex<Real>&);                            \
  template std::vector<Complex<Real>> qde_residual(const Poly<Real>&, const ParamSet<Real>&,      \
                                                   std::span<const Complex<Real>>);          \
  template std::vector<Complex<Real>> qde_sample_points(const ParamSet<Real>&, int, std::uint64_t);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
