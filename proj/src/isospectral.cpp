#include "qhyp/isospectral.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "qhyp/hungarian.hpp"

namespace qhyp {

namespace {

template <class Real>
void require_finite(const CMatrix<Real>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto& v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::DegenerateZeros, "matrix entry is not finite; points are not distinct");
  }
}

}  // namespace

template <class Real>
CMatrix<Real> build_M_at(std::span<const Complex<Real>> z, const ParamSet<Real>& params) {
  using C = Complex<Real>;
  const int N = static_cast<int>(z.size());
  const int r = params.r(), s = params.s();
  const C q = params.q;
  const C one(1);
  const C qmN = ipow(q, -params.N);
  const auto sym = elem_sym(params);
  const KernelCache<Real> K = KernelCache<Real>::for_params(z, params);

  auto qm1 = [&](int p) { return ipow(q, p) - one; };
  auto sq = [](const C& x) { return x * x; };

  CMatrix<Real> M(N, N);
  for (int n = 0; n < N; ++n) {
    const C zn = z[n];

    // beta part
    C gb = sq(qm1(1)) * K.g(1, n);
    for (int k = 1; k <= s; ++k) {
      const C w = sym.b[k - 1] * sign_pow<Real>(k) * ipow(q, -k);
      gb += w * (sq(qm1(k + 1)) * K.g(k + 1, n) - sq(qm1(k)) * K.g(k, n));
    }
    // alpha part, squared factors with g
    const int d = s - r;
    C ga = qmN * sq(qm1(d + 1)) * K.g(d + 1, n) - sq(qm1(d)) * K.g(d, n);
    C fa = qmN * qm1(d + 1) * K.f(d + 1, n) - qm1(d) * K.f(d, n);
    for (int j = 1; j <= r; ++j) {
      const C w = sym.a[j - 1] * sign_pow<Real>(j);
      ga += w * (qmN * sq(qm1(j + d + 1)) * K.g(j + d + 1, n) - sq(qm1(j + d)) * K.g(j + d, n));
      fa += w * (qmN * qm1(j + d + 1) * K.f(j + d + 1, n) - qm1(j + d) * K.f(j + d, n));
    }
    M(n, n) = sign_pow<Real>(s) * gb + sign_pow<Real>(r + 1) * zn * ga + sign_pow<Real>(r) * fa;

    for (int m = 0; m < N; ++m) {
      if (m == n) continue;
      const C inv = one / sq(zn - z[m]);
      C hb = sq(qm1(1)) * K.fnm(1, n, m);
      for (int k = 1; k <= s; ++k) {
        const C w = sym.b[k - 1] * sign_pow<Real>(k) * ipow(q, -k);
        hb += w * (sq(qm1(k + 1)) * K.fnm(k + 1, n, m) - sq(qm1(k)) * K.fnm(k, n, m));
      }
      C ha = qmN * sq(qm1(d + 1)) * K.fnm(d + 1, n, m) - sq(qm1(d)) * K.fnm(d, n, m);
      for (int j = 1; j <= r; ++j) {
        const C w = sym.a[j - 1] * sign_pow<Real>(j);
        ha += w * (qmN * sq(qm1(j + d + 1)) * K.fnm(j + d + 1, n, m) -
                   sq(qm1(j + d)) * K.fnm(j + d, n, m));
      }
      M(n, m) = sign_pow<Real>(s + 1) * zn * inv * hb + sign_pow<Real>(r) * zn * zn * inv * ha;
    }
  }
  require_finite(M);
  return M;
}

template <class Real>
CMatrix<Real> build_M_special(std::span<const Complex<Real>> z, const ParamSet<Real>& params) {
  using C = Complex<Real>;
  const int r = params.r(), s = params.s();
  const bool supported = (r == 1 && s == 1) || (r == 2 && s == 1) || (r == 2 && s == 2);
  if (!supported)
    throw Error(ErrorCode::LengthMismatch,
                "no specialized builder for (r, s) = (" + std::to_string(r) + ", " + std::to_string(s) + ")");
  const int N = static_cast<int>(z.size());
  const C q = params.q;
  const C one(1);
  const C qmN = ipow(q, -params.N);
  const auto sym = elem_sym(params);
  const KernelCache<Real> K(z, q, -1, 3);

  auto qm1 = [&](int p) { return ipow(q, p) - one; };
  auto sq = [](const C& x) { return x * x; };

  CMatrix<Real> M(N, N);
  for (int n = 0; n < N; ++n) {
    const C zn = z[n];
    if (r == 1) {
      const C a1 = sym.a[0], b1 = sym.b[0];
      const C c1 = -one - b1 / q + zn * (qmN + a1);
      const C c2 = b1 / q - zn * a1 * qmN;
      M(n, n) = sq(qm1(1)) * K.g(1, n) * c1 + sq(qm1(2)) * K.g(2, n) * c2 +
                qm1(1) * K.f(1, n) * (-qmN - a1) + qm1(2) * K.f(2, n) * a1 * qmN;
      for (int m = 0; m < N; ++m) {
        if (m == n) continue;
        M(n, m) = zn / sq(zn - z[m]) * (-sq(qm1(1)) * K.fnm(1, n, m) * c1 - sq(qm1(2)) * K.fnm(2, n, m) * c2);
      }
    } else if (s == 1) {
      const C a1 = sym.a[0], a2 = sym.a[1], b1 = sym.b[0];
      const C c1 = -one - b1 / q + zn * (a1 * qmN + a2);
      const C c2 = b1 / q - zn * a2 * qmN;
      M(n, n) = sq(qm1(1)) * K.g(1, n) * c1 + sq(qm1(2)) * K.g(2, n) * c2 +
                sq(qm1(-1)) * K.g(-1, n) * zn - qm1(-1) * K.f(-1, n) +
                qm1(1) * K.f(1, n) * (-a1 * qmN - a2) + qm1(2) * K.f(2, n) * a2 * qmN;
      for (int m = 0; m < N; ++m) {
        if (m == n) continue;
        M(n, m) = zn / sq(zn - z[m]) *
                  (-sq(qm1(1)) * K.fnm(1, n, m) * c1 - sq(qm1(2)) * K.fnm(2, n, m) * c2 -
                   sq(qm1(-1)) * K.fnm(-1, n, m) * zn);
      }
    } else {
      const C a1 = sym.a[0], a2 = sym.a[1], b1 = sym.b[0], b2 = sym.b[1];
      const C c1 = one + b1 / q - zn * (qmN + a1);
      const C c2 = -b1 / q - b2 / (q * q) + zn * (qmN * a1 + a2);
      const C c3 = b2 / (q * q) - zn * a2 * qmN;
      M(n, n) = sq(qm1(1)) * K.g(1, n) * c1 + sq(qm1(2)) * K.g(2, n) * c2 + sq(qm1(3)) * K.g(3, n) * c3 +
                qm1(1) * K.f(1, n) * (qmN + a1) + qm1(2) * K.f(2, n) * (-a1 * qmN - a2) +
                qm1(3) * K.f(3, n) * a2 * qmN;
      for (int m = 0; m < N; ++m) {
        if (m == n) continue;
        M(n, m) = zn / sq(zn - z[m]) *
                  (-sq(qm1(1)) * K.fnm(1, n, m) * c1 - sq(qm1(2)) * K.fnm(2, n, m) * c2 -
                   sq(qm1(3)) * K.fnm(3, n, m) * c3);
      }
    }
  }
  require_finite(M);
  return M;
}

template <class Real>
std::uint64_t params_digest(const ParamSet<Real>& params, std::span<const Complex<Real>> zeros) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  auto mix_complex = [&](const Complex<Real>& c) {
    const double parts[2] = {static_cast<double>(c.real()), static_cast<double>(c.imag())};
    mix(parts, sizeof parts);
  };
  const std::int64_t header[3] = {params.N, params.r(), params.s()};
  mix(header, sizeof header);
  mix_complex(params.q);
  for (const auto& a : params.alpha) mix_complex(a);
  for (const auto& b : params.beta) mix_complex(b);
  for (const auto& z : zeros) mix_complex(z);
  return h;
}

template <class Real>
IsoMatrix<Real> build_M(const ZeroSet<Real>& zeros, const ParamSet<Real>& params) {
  if (static_cast<int>(zeros.size()) != params.N)
    throw Error(ErrorCode::DegreeMismatch, "expected " + std::to_string(params.N) + " zeros, got " +
                                               std::to_string(zeros.size()));
  std::span<const Complex<Real>> z(zeros.zeros);
  return IsoMatrix<Real>{build_M_at(z, params), params_digest(params, z)};
}

std::vector<Rational> mu_closed_exact(const Rational& q, std::span<const Rational> alphas, int N, int r,
                                      int s) {
  if (q == 0 || q == 1) throw Error(ErrorCode::NonGenericParameter, "q must differ from 0 and 1");
  if (N < 1) throw Error(ErrorCode::InvalidDegree, "N must be >= 1");
  return mu_formula<Rational>(q, alphas, N, r, s);
}

namespace {

template <class Real>
Real rel_gap(const Complex<Real>& value, const Complex<Real>& reference) {
  return std::abs(value - reference) / std::max(Real(1), std::abs(reference));
}

template <class Real>
Complex<Real> power_sum(std::span<const Complex<Real>> v, int p) {
  Complex<Real> acc(0);
  for (const auto& x : v) acc += ipow(x, p);
  return acc;
}

}  // namespace

template <class Real>
SpectrumReport<Real> match_spectrum(std::span<const Complex<Real>> numerical,
                                    std::span<const Complex<Real>> closed, Real threshold) {
  if (numerical.size() != closed.size())
    throw Error(ErrorCode::LengthMismatch, "spectra of sizes " + std::to_string(numerical.size()) + " and " +
                                               std::to_string(closed.size()));
  const std::size_t n = numerical.size();
  std::vector<std::vector<Real>> cost(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = rel_gap(numerical[i], closed[j]);
  const auto assignment = min_cost_assignment(cost);

  SpectrumReport<Real> rep;
  rep.matched_pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& mu = closed[assignment[i]];
    MatchedPair<Real> pair{numerical[i], mu, std::abs(numerical[i] - mu), cost[i][assignment[i]]};
    rep.max_rel_gap = std::max(rep.max_rel_gap, pair.rel_gap);
    rep.matched_pairs.push_back(pair);
  }
  for (int p = 1; p <= 3; ++p)
    rep.power_trace_gaps[p - 1] = rel_gap(power_sum(numerical, p), power_sum(closed, p));
  rep.trace_gap = rep.power_trace_gaps[0];
  rep.det_gap = log_relative_gap(log_product(numerical), log_product(closed));
  rep.is_match = rep.max_rel_gap < threshold && rep.trace_gap < threshold && rep.det_gap < threshold;
  for (const auto g : rep.power_trace_gaps) rep.is_match = rep.is_match && g < threshold;
  return rep;
}

template <class Real>
TraceDetReport<Real> trace_det_checks(const CMatrix<Real>& m, std::span<const Complex<Real>> closed) {
  if (m.rows() != static_cast<Eigen::Index>(closed.size()))
    throw Error(ErrorCode::LengthMismatch, "matrix and spectrum sizes differ");
  TraceDetReport<Real> rep;
  CMatrix<Real> power = m;
  for (int p = 1; p <= 3; ++p) {
    if (p > 1) power = (power * m).eval();
    rep.power_traces[p - 1] = power.trace();
    rep.power_trace_gaps[p - 1] = rel_gap(rep.power_traces[p - 1], power_sum(closed, p));
  }
  rep.log_det = log_det<Real>(m);
  rep.det_gap = log_relative_gap(rep.log_det, log_product(closed));
  return rep;
}

template <class Real>
ClosedTrace<Real> closed_trace(const ParamSet<Real>& params) {
  using C = Complex<Real>;
  const int r = params.r(), s = params.s();
  if (r == 1 && s == 1) return {trace_formula_11<C>(params.q, params.alpha[0], params.N), true};
  if (r == 2 && s == 1)
    return {trace_formula_21<C>(params.q, params.alpha[0], params.alpha[1], params.N), true};
  const auto mu = mu_closed(params);
  return {power_sum<Real>(mu, 1), false};
}

#define QHYP_INSTANTIATE(Real)                                                                             \
  template CMatrix<Real> build_M_at(std::span<const Complex<Real>>, const ParamSet<Real>&);                 \
  template CMatrix<Real> build_M_special(std::span<const Complex<Real>>, const ParamSet<Real>&);            \
  template std::uint64_t params_digest(const ParamSet<Real>&, std::span<const Complex<Real>>);              \
  template IsoMatrix<Real> build_M(const ZeroSet<Real>&, const ParamSet<Real>&);                            \
  template SpectrumReport<Real> match_spectrum(std::span<const Complex<Real>>,                              \
                                               std::span<const Complex<Real>>, Real);                       \
  template TraceDetReport<Real> trace_det_checks(const CMatrix<Real>&, std::span<const Complex<Real>>);    \
  template ClosedTrace<Real> closed_trace(const ParamSet<Real>&);

QHYP_INSTANTIATE(double)
QHYP_INSTANTIATE(long double)

}  // namespace qhyp
