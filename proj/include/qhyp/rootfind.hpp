#ifndef QHYP_ROOTFIND_HPP
#define QHYP_ROOTFIND_HPP

#include <span>
#include <vector>

#include "qhyp/qseries.hpp"

namespace qhyp {

/// The N zeros of a monic polynomial together with a distinctness certificate.
template <class Real>
struct ZeroSet {
  std::vector<Complex<Real>> zeros;
  /// Smallest pairwise distance divided by the largest zero magnitude.
  Real min_separation = 0;
  /// Largest |p(z)| / (|p'(z)| |z|), a relative Newton correction.
  Real max_residual = 0;
  int sweeps = 0;

  std::size_t size() const { return zeros.size(); }
  const Complex<Real>& operator[](std::size_t i) const { return zeros[i]; }
};

struct RootfindOptions {
  int max_sweeps = 500;
  double step_tol = 1e-14;        // scaled by the precision ratio
  double separation_tol = 1e-8;
};

/// Simultaneous Aberth-Ehrlich iteration from a geometric spiral whose radial
/// ratio is |q|^{-1/2}, one guarded Newton polish per root, canonical ordering
/// and a distinctness certificate. Throws Error{DegenerateZeros} when two zeros
/// cannot be certified apart, Error{NoConvergence} when the sweep budget runs
/// out.
template <class Real>
ZeroSet<Real> find_zeros(const Poly<Real>& p, const ParamSet<Real>& params,
                         const RootfindOptions& options = {});

template <class Real>
ZeroSet<Real> find_zeros(const Poly<Real>& p, Real q_abs, const RootfindOptions& options = {});

/// Eigenvalues of the (balanced) companion matrix; an independent oracle.
template <class Real>
std::vector<Complex<Real>> companion_zeros(const Poly<Real>& p);

/// Sorts by (magnitude, phase).
template <class Real>
void sort_canonical(std::vector<Complex<Real>>& zeros);

/// Monic polynomial prod (z - zeros[i]).
template <class Real>
Poly<Real> poly_from_zeros(std::span<const Complex<Real>> zeros);

/// Largest relative distance in the best one-to-one pairing of two multisets
/// (Hungarian matching on |a_i - b_j|); distances are relative to max(|b_j|, floor).
template <class Real>
Real multiset_distance(std::span<const Complex<Real>> a, std::span<const Complex<Real>> b,
                       Real floor = 0);

}  // namespace qhyp

#endif  // QHYP_ROOTFIND_HPP
