#include "qhyp/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qhyp/qdifference.hpp"
#include "qhyp/zero_algebra.hpp"
#include "qhyp/zero_flow.hpp"

namespace qhyp::cli {

namespace {

using json = nlohmann::ordered_json;

template <class Real>
std::complex<double> to_d(const Complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
json complex_list(const std::vector<Complex<Real>>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back(complex_json(to_d(z)));
  return out;
}

template <class Real>
double rel(const Complex<Real>& a, const Complex<Real>& b) {
  return static_cast<double>(std::abs(a - b) / std::max(Real(1), std::abs(b)));
}

template <class Real, class Body>
Report run_guarded(const std::string& name, const RunConfig& config, const RunOptions& opts, Body body) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = name;
  rep.config = to_json(config);
  rep.options["seed"] = opts.seed;
  if (opts.tol)
    rep.options["tol"] = *opts.tol;
  else
    rep.options["tol"] = nullptr;
  rep.options["precision"] = to_string(opts.precision);
  const ParamSet<Real> params = validate(convert_params<Real>(config.params));
  if (q_on_unit_circle(params)) rep.data["q_on_unit_circle"] = true;
  try {
    body(rep, params);
  } catch (const Error& e) {
    rep.error = e.what();
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

template <class Real>
void qde_checks(Report& rep, const ParamSet<Real>& params, const Poly<Real>& mono, const RunOptions& opts) {
  const auto zs = qde_sample_points(params, kQdeSamplePoints, opts.seed);
  const Real sign = sign_pow<Real>(params.s() + 1);
  double worst = 0, agree = 0;
  for (const auto& z : zs) {
    const auto op = qde_operator_form(mono, params, z);
    const auto ex = qde_expanded_form(mono, params, z);
    worst = std::max(worst, static_cast<double>(op.normalized()));
    agree = std::max(agree, static_cast<double>(std::abs(ex.value - sign * op.value) /
                                                std::max(op.scale, ex.scale)));
  }
  rep.at_most("qde_residual_max", worst, 1e-9, opts);
  rep.at_most("qde_expanded_agreement", agree, 1e-10, opts);
}

template <class Real>
Report poly_impl(const RunConfig& config, const RunOptions& opts) {
  return run_guarded<Real>("poly", config, opts, [&](Report& rep, const ParamSet<Real>& params) {
    const auto P = coeffs_P(params);
    const auto p = to_monic(P);
    rep.data["coefficient_order"] = "ascending powers of z";
    rep.data["P"] = complex_list(P.coeffs);
    rep.data["p"] = complex_list(p.coeffs);
    qde_checks(rep, params, p, opts);
  });
}

template <class Real>
double reconstruction_error(const Poly<Real>& mono, const ZeroSet<Real>& zs) {
  const auto rebuilt = poly_from_zeros<Real>(zs.zeros);
  Real cmax = 0, diff = 0;
  for (std::size_t k = 0; k < mono.coeffs.size(); ++k) {
    cmax = std::max(cmax, std::abs(mono.coeffs[k]));
    diff = std::max(diff, std::abs(rebuilt.coeffs[k] - mono.coeffs[k]));
  }
  return static_cast<double>(diff / cmax);
}

template <class Real>
Report zeros_impl(const RunConfig& config, const RunOptions& opts) {
  return run_guarded<Real>("zeros", config, opts, [&](Report& rep, const ParamSet<Real>& params) {
    const auto mono = monic_poly(params);
    const auto zs = find_zeros(mono, params);
    const auto comp = companion_zeros(mono);
    const double gap = static_cast<double>(multiset_distance<Real>(zs.zeros, comp, Real(1e-300)));
    rep.data["zeros"] = complex_list(zs.zeros);
    rep.data["companion_zeros"] = complex_list(comp);
    rep.data["max_newton_residual"] = static_cast<double>(zs.max_residual);
    rep.data["sweeps"] = zs.sweeps;
    rep.above("min_separation", static_cast<double>(zs.min_separation), RootfindOptions{}.separation_tol);
    rep.at_most("companion_gap", gap, 1e-7, opts);
    rep.at_most("reconstruction_error", reconstruction_error(mono, zs), 1e-8, opts);
  });
}

template <class Real>
Report verify_impl(const RunConfig& config, const RunOptions& opts) {
  return run_guarded<Real>("verify", config, opts, [&](Report& rep, const ParamSet<Real>& params) {
    const auto mono = monic_poly(params);
    qde_checks(rep, params, mono, opts);

    const auto zs = find_zeros(mono, params);
    rep.data["zeros"] = complex_list(zs.zeros);
    double prop1 = 0, dual = 0;
    for (Real r : prop1_residuals(zs, params)) prop1 = std::max(prop1, static_cast<double>(r));
    const auto prod = prop1_product_form<Real>(zs.zeros, params);
    const auto horn = prop1_qdiffer_form<Real>(zs.zeros, params, mono);
    for (std::size_t n = 0; n < prod.size(); ++n)
      dual = std::max(dual, static_cast<double>(std::abs(prod[n].value - horn[n].value) /
                                                std::max(prod[n].scale, horn[n].scale)));
    rep.at_most("prop1_residual_max", prop1, 1e-8, opts);
    rep.at_most("prop1_dual_agreement", dual, 1e-10, opts);

    const auto M = build_M(zs, params);
    const auto mu = mu_closed(params);
    const auto spec = match_spectrum<Real>(eigenvalues(M), mu);
    json pairs = json::array();
    for (const auto& pr : spec.matched_pairs)
      pairs.push_back({{"numerical", complex_json(to_d(pr.numerical))}, {"closed", complex_json(to_d(pr.closed))}});
    rep.data["spectrum"] = pairs;
    rep.at_most("spectrum_rel_gap_max", static_cast<double>(spec.max_rel_gap), kSpectrumTol, opts);

    const auto cor = trace_det_checks<Real>(M.entries, mu);
    for (int k = 0; k < 3; ++k)
      rep.at_most("trace_power_" + std::to_string(k + 1) + "_rel_gap", static_cast<double>(cor.power_trace_gaps[k]),
                  1e-6, opts);
    rep.at_most("log_det_gap", static_cast<double>(cor.det_gap), 1e-6, opts);

    const auto ct = closed_trace(params);
    rep.data["closed_trace"] = ct.explicit_formula ? "explicit formula" : "sum of eigenvalues";
    rep.at_most("closed_trace_rel_gap", rel(ct.value, cor.power_traces[0]), ct.explicit_formula ? 1e-8 : 1e-6,
                opts);

    const auto J = jacobian_fd(params, zs);
    rep.at_most("jacobian_rel_defect",
                static_cast<double>(inf_norm<Real>(J.matrix - M.entries) / inf_norm<Real>(M.entries)), 1e-5, opts);
    rep.at_most("jacobian_consistency", static_cast<double>(J.consistency_defect), kConsistencyTol, opts);
  });
}

template <class Real>
Report sweep_impl(const RunConfig& config, const RunOptions& opts) {
  return run_guarded<Real>("sweep", config, opts, [&](Report& rep, const ParamSet<Real>& params) {
    if (params.s() == 0) {
      rep.data["note"] = "no β parameters";
      return;
    }
    const int K = config.sweep_k.value_or(kDefaultSweepK);
    const auto zs = find_zeros(monic_poly(params), params);
    const auto M = build_M(zs, params);
    const auto base = eigenvalues(M);
    const auto mu = mu_closed(params);
    rep.at_most("baseline_spectrum_rel_gap", static_cast<double>(match_spectrum<Real>(base, mu).max_rel_gap),
                kSpectrumTol, opts);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> factor(0.5, 2.0);
    const Real mnorm = inf_norm<Real>(M.entries);
    double spec_drift = 0, matrix_drift = INFINITY;
    json runs = json::array();
    for (int k = 0; k < K; ++k) {
      ParamSet<Real> moved = params;
      std::vector<double> f(params.s());
      for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxBetaRedraws)
          throw Error(ErrorCode::NonGenericParameter, "no generic beta perturbation found in " +
                                                          std::to_string(kMaxBetaRedraws) + " draws");
        for (int j = 0; j < params.s(); ++j) {
          f[j] = factor(rng);
          moved.beta[j] = params.beta[j] * static_cast<Real>(f[j]);
        }
        try {
          validate(moved);
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NonGenericParameter) throw;
        }
      }
      const auto zk = find_zeros(monic_poly(moved), moved);
      const auto Mk = build_M(zk, moved);
      const double sd = static_cast<double>(match_spectrum<Real>(eigenvalues(Mk), base).max_rel_gap);
      const double md = static_cast<double>(inf_norm<Real>(Mk.entries - M.entries) / mnorm);
      spec_drift = std::max(spec_drift, sd);
      matrix_drift = std::min(matrix_drift, md);
      runs.push_back({{"factors", f}, {"spectrum_drift", sd}, {"matrix_drift", md}});
    }
    rep.data["perturbations"] = runs;
    if (K > 0) {
      rep.at_most("spectrum_drift_max", spec_drift, kSpectrumTol, opts);
      rep.above("matrix_drift_min", matrix_drift, 1e-3);
    }
  });
}

template <class Real>
FlowResult flow_impl(const RunConfig& config, const RunOptions& opts) {
  FlowResult out;
  out.report = run_guarded<Real>("flow", config, opts, [&](Report& rep, const ParamSet<Real>& params) {
    using C = Complex<Real>;
    const Real t_end = static_cast<Real>(config.t_end.value_or(kDefaultTEnd));
    const Real perturb = static_cast<Real>(config.perturb.value_or(0.0));
    const int N = params.N;
    const auto zs = find_zeros(monic_poly(params), params);
    const auto M = build_M(zs, params);

    const FlowState<Real> eq{zs.zeros, Real(0)};
    rep.at_most("equilibrium_residual", static_cast<double>(flow_rhs_scaled(eq, params).normalized_max()), 1e-8,
                opts);
    const auto J = jacobian_fd(params, zs);
    rep.at_most("jacobian_rel_defect",
                static_cast<double>(inf_norm<Real>(J.matrix - M.entries) / inf_norm<Real>(M.entries)), 1e-5, opts);

    Real grow = -INFINITY;
    for (const auto& m : mu_closed(params)) grow = std::max(grow, m.real());
    rep.data["contractive"] = grow < 0;

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    CVector<Real> xi0 = CVector<Real>::Zero(N);
    FlowState<Real> start = eq;
    if (perturb > 0)
      for (int n = 0; n < N; ++n) {
        xi0(n) = perturb * std::abs(zs[n]) * std::polar(Real(1), static_cast<Real>(angle(rng)));
        start.z[n] += xi0(n);
      }

    const auto traj = integrate_flow(params, start, t_end, t_end / Real(kFlowSamples));
    Real zmax = 0;
    for (const auto& z : zs.zeros) zmax = std::max(zmax, std::abs(z));
    json dev_norms = json::array(), lin_norms = json::array();
    double drift = 0, lin_gap = 0;
    bool monotone = true;
    Real prev = INFINITY;
    for (const auto& s : traj) {
      out.trajectory.push_back({static_cast<double>(s.t), {}});
      CVector<Real> dev(N);
      for (int n = 0; n < N; ++n) {
        out.trajectory.back().z.push_back(to_d(s.z[n]));
        dev(n) = s.z[n] - zs[n];
        drift = std::max(drift, static_cast<double>(std::abs(dev(n)) / zmax));
      }
      const Real dn = dev.norm();
      dev_norms.push_back(static_cast<double>(dn));
      if (perturb > 0) {
        const CMatrix<Real> E = (M.entries * C(s.t)).exp();
        const Real ln = (E * xi0).norm();
        lin_norms.push_back(static_cast<double>(ln));
        lin_gap = std::max(lin_gap, static_cast<double>(std::abs(dn - ln) / ln));
        if (dn > prev * Real(1 + 1e-9)) monotone = false;
        prev = dn;
      }
    }
    rep.data["deviation_norms"] = dev_norms;
    if (perturb > 0) {
      rep.data["linearized_norms"] = lin_norms;
      rep.data["deviation_monotone"] = monotone;
      rep.at_most("linearization_gap", lin_gap, 0.1, opts);
    } else {
      rep.at_most("equilibrium_drift", drift, 1e-8, opts);
    }
  });
  return out;
}

}  // namespace

Report cmd_poly(const RunConfig& c, const RunOptions& o) {
  return o.precision == Precision::F64 ? poly_impl<double>(c, o) : poly_impl<long double>(c, o);
}

Report cmd_zeros(const RunConfig& c, const RunOptions& o) {
  return o.precision == Precision::F64 ? zeros_impl<double>(c, o) : zeros_impl<long double>(c, o);
}

Report cmd_verify(const RunConfig& c, const RunOptions& o) {
  return o.precision == Precision::F64 ? verify_impl<double>(c, o) : verify_impl<long double>(c, o);
}

Report cmd_sweep(const RunConfig& c, const RunOptions& o) {
  return o.precision == Precision::F64 ? sweep_impl<double>(c, o) : sweep_impl<long double>(c, o);
}

FlowResult cmd_flow(const RunConfig& c, const RunOptions& o) {
  return o.precision == Precision::F64 ? flow_impl<double>(c, o) : flow_impl<long double>(c, o);
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows, int N) {
  out << "t";
  for (int n = 1; n <= N; ++n) out << ",re_z" << n << ",im_z" << n;
  out << '\n';
  char buf[32];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.t);
    out << buf;
    for (const auto& z : row.z) {
      std::snprintf(buf, sizeof buf, ",%.17g", z.real());
      out << buf;
      std::snprintf(buf, sizeof buf, ",%.17g", z.imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace qhyp::cli
