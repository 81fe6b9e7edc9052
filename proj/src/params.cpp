#include "qhyp/params.hpp"

#include <cmath>
#include <sstream>

namespace qhyp {

namespace {

template <class Real>
std::string describe(const Complex<Real>& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << static_cast<double>(z.real()) << ", " << static_cast<double>(z.imag()) << ")";
  return os.str();
}

template <class Real>
bool finite(const Complex<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Rejects gamma with |1 - gamma q^m| < tol for some m in [0, N-1], i.e. gamma
// within tol (after scaling by |q|^m) of the pole point q^{-m}.
template <class Real>
void check_pole_points(const Complex<Real>& gamma, const ParamSet<Real>& params,
                       const std::string& name) {
  if (!finite(gamma))
    throw Error(ErrorCode::NonGenericParameter, name + " is not finite");
  for (int m = 0; m < params.N; ++m) {
    if (std::abs(Real(1) - gamma * ipow(params.q, m)) < Real(kGenericityTol)) {
      throw Error(ErrorCode::NonGenericParameter,
                  name + " = " + describe(gamma) + " coincides with q^-" + std::to_string(m));
    }
  }
}

}  // namespace

template <class Real>
ParamSet<Real> validate(const ParamSet<Real>& params) {
  if (params.N < 1)
    throw Error(ErrorCode::InvalidDegree, "N = " + std::to_string(params.N) + " (must be >= 1)");
  const auto& q = params.q;
  if (!finite(q)) throw Error(ErrorCode::NonGenericParameter, "q is not finite");
  if (std::abs(q) < Real(kGenericityTol))
    throw Error(ErrorCode::NonGenericParameter, "q = 0 makes the dilation degenerate");
  // q^k = 1 for k = 1..N zeroes (q;q)_k and (q^-N;q)_N.
  for (int k = 1; k <= params.N; ++k) {
    if (std::abs(Real(1) - ipow(q, k)) < Real(kGenericityTol)) {
      throw Error(ErrorCode::NonGenericParameter,
                  "q = " + describe(q) + " satisfies q^" + std::to_string(k) + " = 1");
    }
  }
  for (std::size_t j = 0; j < params.alpha.size(); ++j)
    check_pole_points(params.alpha[j], params, "alpha[" + std::to_string(j) + "]");
  for (std::size_t k = 0; k < params.beta.size(); ++k)
    check_pole_points(params.beta[k], params, "beta[" + std::to_string(k) + "]");
  return params;
}

template <class Real>
bool q_on_unit_circle(const ParamSet<Real>& params) {
  return std::abs(std::abs(params.q) - Real(1)) < Real(kGenericityTol);
}

template <class Real>
std::vector<Complex<Real>> elementary_symmetric(std::span<const Complex<Real>> values) {
  // coeffs[i] is the coefficient of x^i in the running product.
  std::vector<Complex<Real>> coeffs{Complex<Real>(1)};
  for (const auto& v : values) {
    coeffs.push_back(Complex<Real>(0));
    for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] += v * coeffs[i - 1];
  }
  return {coeffs.begin() + 1, coeffs.end()};
}

template <class Real>
SymFuncs<Real> elem_sym(const ParamSet<Real>& params) {
  return {elementary_symmetric<Real>(params.alpha), elementary_symmetric<Real>(params.beta)};
}

template <class Real>
ParamSet<Real> reduce(const ParamSet<Real>& params, int u) {
  if (u < 0) throw Error(ErrorCode::ReductionTooDeep, "u must be nonnegative");
  if (u == 0) return params;
  if (params.r() - u < 1 || params.s() - u < 1) {
    throw Error(ErrorCode::ReductionTooDeep,
                "u = " + std::to_string(u) + " leaves r-u = " + std::to_string(params.r() - u) +
                    ", s-u = " + std::to_string(params.s() - u));
  }
  for (int p = 1; p <= u; ++p) {
    const auto& a = params.alpha[params.alpha.size() - p];
    const auto& b = params.beta[params.beta.size() - p];
    if (std::abs(a - b) > Real(kGenericityTol)) {
      throw Error(ErrorCode::ReductionMismatch,
                  "trailing pair " + std::to_string(p) + ": alpha = " + describe(a) +
                      ", beta = " + describe(b));
    }
  }
  ParamSet<Real> out = params;
  out.alpha.resize(out.alpha.size() - u);
  out.beta.resize(out.beta.size() - u);
  return out;
}

#define QHYP_INSTANTIATE(Real)                                                                \
  template ParamSet<Real> validate(const ParamSet<Real>&);                                     \
  template bool q_on_unit_circle(const ParamSet<Real>&);                                       \
  template std::vector<Complex<Real>> elementary_symmetric(std::span<const Complex<Real>>);    \
  template SymFuncs<Real> elem_sym(const ParamSet<Real>&);                                     \
  template ParamSet<Real> reduce(const ParamSet<Real>&, int);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
