#ifndef QHYP_ISOSPECTRAL_HPP
#define QHYP_ISOSPECTRAL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qhyp/linalg.hpp"
#include "qhyp/rational.hpp"
#include "qhyp/zero_algebra.hpp"

namespace qhyp {

template <class Real>
struct IsoMatrix {
  CMatrix<Real> entries;
  std::uint64_t params_hash = 0;

  Eigen::Index size() const { return entries.rows(); }
};

/// The N x N matrix whose spectrum is mu_closed(params), built from the zeros
/// and the parameters. Throws Error{DegenerateZeros} for a non-finite entry.
template <class Real>
IsoMatrix<Real> build_M(const ZeroSet<Real>& zeros, const ParamSet<Real>& params);

/// Same formulas at an arbitrary configuration of distinct points.
template <class Real>
CMatrix<Real> build_M_at(std::span<const Complex<Real>> z, const ParamSet<Real>& params);

/// Hand-expanded builders for (r, s) = (1,1), (2,1), (2,2). Kept as a separate
/// code path so the general builder's signs are cross-checked.
template <class Real>
CMatrix<Real> build_M_special(std::span<const Complex<Real>> z, const ParamSet<Real>& params);

/// mu_n = -q^{(s-r)(N-n)} (q^-n - 1) prod_j (alpha_j q^{N-n} - 1), n = 1..N,
/// over any field T (complex or exact rational).
template <class T>
std::vector<T> mu_formula(const T& q, std::span<const T> alphas, int N, int r, int s) {
  std::vector<T> mu;
  mu.reserve(N);
  const T one(1);
  for (int n = 1; n <= N; ++n) {
    const T qNn = ipow(q, N - n);
    T value = -ipow(q, (s - r) * (N - n)) * (ipow(q, -n) - one);
    for (const auto& a : alphas) value *= a * qNn - one;
    mu.push_back(value);
  }
  return mu;
}

template <class Real>
std::vector<Complex<Real>> mu_closed(const ParamSet<Real>& params) {
  return mu_formula<Complex<Real>>(params.q, params.alpha, params.N, params.r(), params.s());
}

/// Exact eigenvalues for rational q and alpha. Throws
/// Error{NonGenericParameter} for q = 0 or q = 1.
std::vector<Rational> mu_closed_exact(const Rational& q, std::span<const Rational> alphas, int N,
                                      int r, int s);

template <class Real>
std::vector<Complex<Real>> eigenvalues(const IsoMatrix<Real>& m) {
  return eigenvalues<Real>(m.entries, true);
}

template <class Real>
struct MatchedPair {
  Complex<Real> numerical;
  Complex<Real> closed;
  Real abs_gap = 0;
  Real rel_gap = 0;  // abs_gap / max(1, |closed|)
};

template <class Real>
struct SpectrumReport {
  std::vector<MatchedPair<Real>> matched_pairs;
  Real max_rel_gap = 0;
  Real trace_gap = 0;
  Real det_gap = 0;
  std::array<Real, 3> power_trace_gaps{};
  bool is_match = false;
};

inline constexpr double kSpectrumTol = 1e-6;

/// Hungarian matching of numerical eigenvalues to closed-form values, plus
/// trace, determinant (log space) and power-sum gaps. Throws
/// Error{LengthMismatch}.
template <class Real>
SpectrumReport<Real> match_spectrum(std::span<const Complex<Real>> numerical,
                                    std::span<const Complex<Real>> closed,
                                    Real threshold = Real(kSpectrumTol));

/// Trace(M^p) for p = 1..3 from matrix powers and det(M) from LU, both against
/// the closed-form eigenvalues.
template <class Real>
struct TraceDetReport {
  std::array<Complex<Real>, 3> power_traces{};
  std::array<Real, 3> power_trace_gaps{};
  Complex<Real> log_det{};
  Real det_gap = 0;
};

template <class Real>
TraceDetReport<Real> trace_det_checks(const CMatrix<Real>& m, std::span<const Complex<Real>> closed);

/// Closed-form trace for (r,s) = (1,1):
/// -a q^{N+2}/(q^2-1) (1-q^{-2N-2}) + (q + a q^{N+1})/(q-1) (1-q^{-N-1}) - N - 1.
template <class T>
T trace_formula_11(const T& q, const T& alpha, int N) {
  const T one(1);
  return -alpha * ipow(q, N + 2) / (q * q - one) * (one - ipow(q, -2 * N - 2)) +
         (q + alpha * ipow(q, N + 1)) / (q - one) * (one - ipow(q, -N - 1)) - T(N) - one;
}

/// Closed-form trace for (r,s) = (2,1).
template <class T>
T trace_formula_21(const T& q, const T& a1, const T& a2, int N) {
  const T one(1);
  const T qq1 = q * q - one;
  const T qN = ipow(q, N);
  return ipow(q, -N) / qq1 *
         (-T(N) * qq1 * (one + qN * (a1 + a2)) +
          (qN - one) * (q * q + a1 + a2 - a1 * a2 + ipow(q, N + 1) * a1 * a2 + q * (one + a1 + a2)));
}

template <class Real>
struct ClosedTrace {
  Complex<Real> value;
  bool explicit_formula = false;  // false: sum of mu_closed
};

template <class Real>
ClosedTrace<Real> closed_trace(const ParamSet<Real>& params);

/// FNV-1a digest of the parameters and zeros (as binary64 values).
template <class Real>
std::uint64_t params_digest(const ParamSet<Real>& params, std::span<const Complex<Real>> zeros);

}  // namespace qhyp

#endif  // QHYP_ISOSPECTRAL_HPP
