#include "qhyp/zero_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qhyp {

template <class Real>
Complex<Real> f_n(int p, int n, std::span<const Complex<Real>> z, const Complex<Real>& q) {
  if (p == 0) return Complex<Real>(1);
  const Complex<Real> qpz = ipow(q, p) * z[n];
  Complex<Real> acc(1);
  for (std::size_t l = 0; l < z.size(); ++l)
    if (static_cast<int>(l) != n) acc *= (qpz - z[l]) / (z[n] - z[l]);
  return acc;
}

template <class Real>
Complex<Real> f_nm(int p, int n, int m, std::span<const Complex<Real>> z, const Complex<Real>& q) {
  if (n == m) throw Error(ErrorCode::IndexCollision, "f_nm needs n != m (got " + std::to_string(n) + ")");
  if (p == 0) return Complex<Real>(1);
  const Complex<Real> qpz = ipow(q, p) * z[n];
  Complex<Real> acc(1);
  for (std::size_t l = 0; l < z.size(); ++l) {
    const int li = static_cast<int>(l);
    if (li != n && li != m) acc *= (qpz - z[l]) / (z[n] - z[l]);
  }
  return acc;
}

template <class Real>
Complex<Real> g_n(int p, int n, std::span<const Complex<Real>> z, const Complex<Real>& q) {
  Complex<Real> acc(0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    const int ki = static_cast<int>(k);
    if (ki == n) continue;
    const Complex<Real> d = z[n] - z[k];
    acc += f_nm(p, n, ki, z, q) * z[k] / (d * d);
  }
  return acc;
}

template <class Real>
KernelCache<Real>::KernelCache(std::span<const Complex<Real>> z, const Complex<Real>& q, int p_min,
                               int p_max)
    : n_(static_cast<int>(z.size())), p_min_(p_min), p_max_(p_max), z_(z.begin(), z.end()) {
  const int shifts = p_max - p_min + 1;
  f_.assign(static_cast<std::size_t>(shifts) * n_, Complex<Real>(0));
  g_.assign(f_.size(), Complex<Real>(0));
  fnm_.assign(f_.size() * n_, Complex<Real>(1));
  std::vector<Complex<Real>> ratio(n_);
  for (int p = p_min; p <= p_max; ++p) {
    const Complex<Real> qp = ipow(q, p);
    const int sp = p - p_min;
    for (int n = 0; n < n_; ++n) {
      for (int l = 0; l < n_; ++l) ratio[l] = l == n || p == 0 ? Complex<Real>(1) : (qp * z_[n] - z_[l]) / (z_[n] - z_[l]);
      Complex<Real> full(1);
      for (int l = 0; l < n_; ++l) full *= ratio[l];
      f_[sp * n_ + n] = full;
      Complex<Real> gsum(0);
      for (int m = 0; m < n_; ++m) {
        if (m == n) continue;
        Complex<Real> partial(1);
        for (int l = 0; l < n_; ++l)
          if (l != m) partial *= ratio[l];
        fnm_[(static_cast<std::size_t>(sp) * n_ + n) * n_ + m] = partial;
        const Complex<Real> d = z_[n] - z_[m];
        gsum += partial * z_[m] / (d * d);
      }
      g_[sp * n_ + n] = gsum;
    }
  }
}

template <class Real>
int KernelCache<Real>::slot(int p) const {
  if (p < p_min_ || p > p_max_) {
    throw Error(ErrorCode::IndexCollision, "shift " + std::to_string(p) + " outside cached range [" +
                                               std::to_string(p_min_) + ", " + std::to_string(p_max_) + "]");
  }
  return p - p_min_;
}

namespace {

template <class Real>
Complex<Real> product_poly(std::span<const Complex<Real>> z, const Complex<Real>& w) {
  Complex<Real> acc(1);
  for (const auto& zm : z) acc *= w - zm;
  return acc;
}

// Value of prod (w - z_m) and the bound prod (|w| + |z_m|).
template <class Real>
std::pair<Complex<Real>, Real> product_poly_bound(std::span<const Complex<Real>> z, const Complex<Real>& w) {
  Complex<Real> acc(1);
  Real bound(1);
  for (const auto& zm : z) {
    acc *= w - zm;
    bound *= std::abs(w) + std::abs(zm);
  }
  return {acc, bound};
}

template <class Real>
std::pair<Complex<Real>, Real> horner_bound(const Poly<Real>& p, const Complex<Real>& w) {
  Real bound(0);
  const Real aw = std::abs(w);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) bound = bound * aw + std::abs(*it);
  return {eval_poly(p, w), bound};
}

template <class Real>
void check_size(std::size_t n, const ParamSet<Real>& params) {
  if (static_cast<int>(n) != params.N) {
    throw Error(ErrorCode::DegreeMismatch,
                std::to_string(n) + " zeros given for N = " + std::to_string(params.N));
  }
}

// Shared skeleton of both evaluations; `value_at(n, k)` returns p(z_n q^k) and
// a magnitude bound for it. Scale is the largest term, floored at
// kTermFloor * bound since at the zeros every term may vanish.
// With exclusions the p(z_n) term and the j = r-s, j = r-s-1 terms are dropped.
template <class Real, class ValueAt>
IdentityEval<Real> prop1_terms(int n, std::span<const Complex<Real>> z, const ParamSet<Real>& params,
                               const SymFuncs<Real>& sym, bool with_exclusions, ValueAt value_at) {
  const auto& q = params.q;
  const int r = params.r();
  const int s = params.s();
  const Complex<Real> zn = z[n];
  const Complex<Real> qmN = ipow(q, -params.N);
  const Complex<Real> sigma = sign_pow<Real>(r - s);

  IdentityEval<Real> out{Complex<Real>(0), Real(0)};
  auto add = [&](const Complex<Real>& weight, int shift) {
    const auto [v, bound] = value_at(n, shift);
    out.value += weight * v;
    out.scale = std::max({out.scale, std::abs(weight * v), Real(kTermFloor) * std::abs(weight) * bound});
  };

  if (!with_exclusions) add(Complex<Real>(1), 0);
  add(Complex<Real>(-1), 1);
  for (int k = 1; k <= s; ++k) {
    const Complex<Real> w = ipow(-q, -k) * sym.b[k - 1];
    add(w, k);
    add(-w, k + 1);
  }
  add(-sigma * zn, s - r);
  add(sigma * zn * qmN, s - r + 1);
  for (int j = 1; j <= r; ++j) {
    const Complex<Real> w = sign_pow<Real>(j) * sym.a[j - 1];
    if (!with_exclusions || j != r - s) add(-sigma * zn * w, s - r + j);
    if (!with_exclusions || j != r - s - 1) add(sigma * zn * qmN * w, s - r + j + 1);
  }
  return out;
}

}  // namespace

template <class Real>
std::vector<IdentityEval<Real>> prop1_product_form(std::span<const Complex<Real>> z,
                                                   const ParamSet<Real>& params) {
  check_size(z.size(), params);
  const auto sym = elem_sym(params);
  std::vector<IdentityEval<Real>> out;
  out.reserve(z.size());
  for (int n = 0; n < static_cast<int>(z.size()); ++n) {
    out.push_back(prop1_terms(n, z, params, sym, true, [&](int i, int k) {
      return product_poly_bound(z, z[i] * ipow(params.q, k));
    }));
  }
  return out;
}

template <class Real>
std::vector<IdentityEval<Real>> prop1_qdiffer_form(std::span<const Complex<Real>> z,
                                                   const ParamSet<Real>& params,
                                                   const Poly<Real>& monic) {
  check_size(z.size(), params);
  const auto sym = elem_sym(params);
  std::vector<IdentityEval<Real>> out;
  out.reserve(z.size());
  for (int n = 0; n < static_cast<int>(z.size()); ++n) {
    out.push_back(prop1_terms(n, z, params, sym, false, [&](int i, int k) {
      return horner_bound(monic, z[i] * ipow(params.q, k));
    }));
  }
  return out;
}

template <class Real>
std::vector<Real> prop1_residuals(const ZeroSet<Real>& zeros, const ParamSet<Real>& params) {
  std::vector<Real> out;
  for (const auto& e : prop1_product_form<Real>(zeros.zeros, params)) out.push_back(e.residual());
  return out;
}

template <class Real>
Complex<Real> prop1_special(int n, std::span<const Complex<Real>> z, const ParamSet<Real>& params) {
  check_size(z.size(), params);
  const auto& q = params.q;
  const Complex<Real> zn = z[n];
  const Complex<Real> qmN = ipow(q, -params.N);
  auto P = [&](int k) { return product_poly(z, zn * ipow(q, k)); };
  const Complex<Real> one(1);

  if (params.r() == 1 && params.s() == 1) {
    const auto& a1 = params.alpha[0];
    const auto& b1 = params.beta[0];
    return (one - zn * qmN + b1 / q - a1 * zn) * P(1) + (-b1 / q + a1 * zn * qmN) * P(2);
  }
  if (params.r() == 2 && params.s() == 1) {
    const Complex<Real> a1 = params.alpha[0] + params.alpha[1];
    const Complex<Real> a2 = params.alpha[0] * params.alpha[1];
    const auto& b1 = params.beta[0];
    return (-one - b1 / q + zn * (a2 + qmN * a1)) * P(1) + (b1 / q - zn * qmN * a2) * P(2) +
           zn * P(-1);
  }
  if (params.r() == 2 && params.s() == 2) {
    const Complex<Real> a1 = params.alpha[0] + params.alpha[1];
    const Complex<Real> a2 = params.alpha[0] * params.alpha[1];
    const Complex<Real> b1 = params.beta[0] + params.beta[1];
    const Complex<Real> b2 = params.beta[0] * params.beta[1];
    return (-one - b1 / q + zn * (qmN + a1)) * P(1) +
           (b1 / q + b2 / (q * q) - zn * (qmN * a1 + a2)) * P(2) +
           (-b2 / (q * q) + zn * qmN * a2) * P(3);
  }
  throw Error(ErrorCode::DegreeMismatch, "no specialized form for (r, s) = (" +
                                             std::to_string(params.r()) + ", " +
                                             std::to_string(params.s()) + ")");
}

#define QHYP_INSTANTIATE(Real)                                                                  \
  template Complex<Real> f_n(int, int, std::span<const Complex<Real>>, const Complex<Real>&);   \
  template Complex<Real> f_nm(int, int, int, std::span<const Complex<Real>>, const Complex<Real>&); \
  template Complex<Real> g_n(int, int, std::span<const Complex<Real>>, const Complex<Real>&);   \
  template class KernelCache<Real>;                                                             \
  template std::vector<IdentityEval<Real>> prop1_product_form(std::span<const Complex<Real>>,   \
                                                              const ParamSet<Real>&);           \
  template std::vector<IdentityEval<Real>> prop1_qdiffer_form(                                  \
      std::span<const Complex<Real>>, const ParamSet<Real>&, const Poly<Real>&);                \
  template std::vector<Real> prop1_residuals(const ZeroSet<Real>&, const ParamSet<Real>&);      \
  template Complex<Real> prop1_special(int, std::span<const Complex<Real>>, const ParamSet<Real>&);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
