#ifndef QHYP_ODE_HPP
#define QHYP_ODE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qhyp/types.hpp"

namespace qhyp {

template <class Real>
struct Dopri5Options {
  Real rtol = Real(1e-10);
  Real atol = Real(1e-14);
  Real h_init = Real(1e-3);
  Real h_min_rel = Real(1e-13);  // relative to max(1, |t|)
  long max_steps = 1000000;
};

template <class Real>
struct Dopri5Stats {
  long accepted = 0;
  long rejected = 0;
  Real last_h = 0;
};

/// Adaptive Dormand-Prince 5(4) step control over a complex state vector.
/// Integrates y from t0 to t1 in place. h carries the step size across calls.
/// Throws Error{StepUnderflow} if the controller drives the step below the
/// minimum.
template <class Real>
void dopri5_integrate(
    const std::function<std::vector<Complex<Real>>(Real, const std::vector<Complex<Real>>&)>& rhs,
    std::vector<Complex<Real>>& y, Real t0, Real t1, Real& h, const Dopri5Options<Real>& opts,
    Dopri5Stats<Real>* stats = nullptr) {
  using C = Complex<Real>;
  using V = std::vector<C>;
  static constexpr Real c2 = Real(1) / 5, c3 = Real(3) / 10, c4 = Real(4) / 5, c5 = Real(8) / 9;
  static constexpr Real a21 = Real(1) / 5;
  static constexpr Real a31 = Real(3) / 40, a32 = Real(9) / 40;
  static constexpr Real a41 = Real(44) / 45, a42 = Real(-56) / 15, a43 = Real(32) / 9;
  static constexpr Real a51 = Real(19372) / 6561, a52 = Real(-25360) / 2187, a53 = Real(64448) / 6561,
                        a54 = Real(-212) / 729;
  static constexpr Real a61 = Real(9017) / 3168, a62 = Real(-355) / 33, a63 = Real(46732) / 5247,
                        a64 = Real(49) / 176, a65 = Real(-5103) / 18656;
  static constexpr Real b1 = Real(35) / 384, b3 = Real(500) / 1113, b4 = Real(125) / 192,
                        b5 = Real(-2187) / 6784, b6 = Real(11) / 84;
  static constexpr Real e1 = Real(71) / 57600, e3 = Real(-71) / 16695, e4 = Real(71) / 1920,
                        e5 = Real(-17253) / 339200, e6 = Real(22) / 525, e7 = Real(-1) / 40;

  const std::size_t n = y.size();
  if (t1 <= t0 || n == 0) return;
  if (!(h > 0)) h = opts.h_init;
  auto axpy = [n](const V& base, std::initializer_list<std::pair<Real, const V*>> terms, Real dt) {
    V out(base);
    for (const auto& [w, k] : terms)
      for (std::size_t i = 0; i < n; ++i) out[i] += dt * w * (*k)[i];
    return out;
  };

  Real t = t0;
  V k1 = rhs(t, y);
  long steps = 0;
  while (t < t1) {
    if (++steps > opts.max_steps) throw Error(ErrorCode::StepUnderflow, "step budget exhausted");
    const bool last = t + h >= t1;
    const Real dt = last ? t1 - t : h;
    const V k2 = rhs(t + c2 * dt, axpy(y, {{a21, &k1}}, dt));
    const V k3 = rhs(t + c3 * dt, axpy(y, {{a31, &k1}, {a32, &k2}}, dt));
    const V k4 = rhs(t + c4 * dt, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, dt));
    const V k5 = rhs(t + c5 * dt, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, dt));
    const V k6 = rhs(t + dt, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, dt));
    const V y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, dt);
    const V k7 = rhs(t + dt, y5);

    Real err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const C e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const Real sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    const Real factor = err == 0 ? Real(5) : std::clamp(Real(0.9) * std::pow(err, Real(-0.2)), Real(0.2), Real(5));
    if (err <= 1) {
      t = last ? t1 : t + dt;
      y = y5;
      k1 = k7;
      if (stats) ++stats->accepted;
      if (!last) h = dt * factor;
    } else {
      if (stats) ++stats->rejected;
      h = dt * factor;
    }
    if (h < opts.h_min_rel * std::max(Real(1), std::abs(t)))
      throw Error(ErrorCode::StepUnderflow, "step size underflow at t = " + std::to_string(double(t)));
  }
  if (stats) stats->last_h = h;
}

}  // namespace qhyp

#endif  // QHYP_ODE_HPP
