#ifndef QHYP_ZERO_ALGEBRA_HPP
#define QHYP_ZERO_ALGEBRA_HPP

#include <span>
#include <vector>

#include "qhyp/rootfind.hpp"

namespace qhyp {

// Kernels over a configuration of distinct points z (zeros or flow positions).
// Indices n, m are 0-based. Shifts p may be negative.

/// f_n(p) = prod_{l != n} (q^p z_n - z_l) / (z_n - z_l)
template <class Real>
Complex<Real> f_n(int p, int n, std::span<const Complex<Real>> z, const Complex<Real>& q);

/// f_nm(p): the same product with l = m also excluded. Throws
/// Error{IndexCollision} when n == m.
template <class Real>
Complex<Real> f_nm(int p, int n, int m, std::span<const Complex<Real>> z, const Complex<Real>& q);

/// g_n(p) = sum_{k != n} f_nk(p) z_k / (z_n - z_k)^2
template <class Real>
Complex<Real> g_n(int p, int n, std::span<const Complex<Real>> z, const Complex<Real>& q);

/// Smallest and largest shift used by the matrix and the flow for (r, s):
/// the range [min(1, s-r), s+1].
inline std::pair<int, int> shift_range(int r, int s) { return {std::min(1, s - r), s + 1}; }

/// All f_n(p), g_n(p), f_nm(p) for p in a contiguous shift range, computed once.
/// f_nm is built as a direct product (never as f_n divided by a factor, which
/// may vanish: for r = s = 0 the zeros satisfy q z_n = z_{n+1}).
template <class Real>
class KernelCache {
 public:
  KernelCache(std::span<const Complex<Real>> z, const Complex<Real>& q, int p_min, int p_max);

  static KernelCache for_params(std::span<const Complex<Real>> z, const ParamSet<Real>& params) {
    const auto [lo, hi] = shift_range(params.r(), params.s());
    return KernelCache(z, params.q, lo, hi);
  }

  int size() const { return n_; }
  int p_min() const { return p_min_; }
  int p_max() const { return p_max_; }
  const Complex<Real>& z(int n) const { return z_[n]; }

  const Complex<Real>& f(int p, int n) const { return f_[slot(p) * n_ + n]; }
  const Complex<Real>& g(int p, int n) const { return g_[slot(p) * n_ + n]; }
  const Complex<Real>& fnm(int p, int n, int m) const {
    return fnm_[(static_cast<std::size_t>(slot(p)) * n_ + n) * n_ + m];
  }

 private:
  int slot(int p) const;

  int n_;
  int p_min_, p_max_;
  std::vector<Complex<Real>> z_;
  std::vector<Complex<Real>> f_, g_, fnm_;
};

/// One evaluated identity: the left-hand side and the largest term in it.
/// Terms below this fraction of their magnitude bound count as cancelled when
/// normalizing identity residuals.
inline constexpr double kTermFloor = 1e-6;

template <class Real>
struct IdentityEval {
  Complex<Real> value;
  Real scale = 0;
  Real residual() const { return scale > 0 ? std::abs(value) / scale : std::abs(value); }
};

/// The N algebraic equations satisfied by the zeros, with p(w) written as
/// prod_m (w - z_m) and the two excluded j-indices honored.
template <class Real>
std::vector<IdentityEval<Real>> prop1_product_form(std::span<const Complex<Real>> z,
                                                   const ParamSet<Real>& params);

/// The same equations read off the expanded q-difference equation at z_n, with
/// the monic polynomial evaluated by Horner at z_n q^k (no exclusions).
template <class Real>
std::vector<IdentityEval<Real>> prop1_qdiffer_form(std::span<const Complex<Real>> z,
                                                   const ParamSet<Real>& params,
                                                   const Poly<Real>& monic);

/// Normalized product-form residuals. Throws Error{DegreeMismatch}.
template <class Real>
std::vector<Real> prop1_residuals(const ZeroSet<Real>& zeros, const ParamSet<Real>& params);

/// Hand-specialized left-hand sides for (r, s) = (1,1), (2,1), (2,2), written
/// directly in the bracketed form. The (1,1) form carries the opposite overall
/// sign to prop1_product_form.
template <class Real>
Complex<Real> prop1_special(int n, std::span<const Complex<Real>> z, const ParamSet<Real>& params);

}  // namespace qhyp

#endif  // QHYP_ZERO_ALGEBRA_HPP
