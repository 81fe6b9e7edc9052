#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qhyp/cli/commands.hpp"

namespace qhyp::cli {

namespace {

std::string trajectory_path(const std::string& explicit_path, const std::string& out) {
  if (!explicit_path.empty()) return explicit_path;
  if (out.empty()) return "trajectory.csv";
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p.string() == out ? out + ".trajectory.csv" : p.string();
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path);
  if (!(f << text) || !f.flush()) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros of generalized basic hypergeometric polynomials and their isospectral matrices", "qzeros"};
  std::string command, config_path, out_path, traj_path, precision = "f64";
  RunOptions opts;
  double tol = 0;
  app.add_option("command", command, "poly, zeros, verify, sweep or flow")
      ->required()
      ->check(CLI::IsMember({"poly", "zeros", "verify", "sweep", "flow"}));
  app.add_option("--config", config_path, "JSON parameter file")->required();
  app.add_option("--out", out_path, "report path (default stdout)");
  app.add_option("--seed", opts.seed, "seed for sample points and perturbations");
  auto* tol_opt = app.add_option("--tol", tol, "replace every upper-bound threshold");
  app.add_option("--precision", precision, "f64 or extended");
  app.add_option("--trajectory", traj_path, "flow CSV path (default: --out with .csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  std::vector<TrajectoryRow> trajectory;
  int N = 0;
  try {
    if (*tol_opt) {
      if (!(std::isfinite(tol) && tol > 0)) throw ConfigError("--tol must be a positive number");
      opts.tol = tol;
    }
    opts.precision = parse_precision(precision);
    const RunConfig config = load_config(config_path);
    N = config.params.N;
    if (command == "poly") report = cmd_poly(config, opts);
    if (command == "zeros") report = cmd_zeros(config, opts);
    if (command == "verify") report = cmd_verify(config, opts);
    if (command == "sweep") report = cmd_sweep(config, opts);
    if (command == "flow") {
      auto res = cmd_flow(config, opts);
      report = std::move(res.report);
      trajectory = std::move(res.trajectory);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return 2;
  }

  const std::string text = report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else if (!write_text(out_path, text, err)) {
    return 2;
  }
  if (command == "flow" && !trajectory.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, trajectory, N);
    if (!write_text(trajectory_path(traj_path, out_path), csv.str(), err)) return 2;
  }
  if (report.error) err << "error: " << *report.error << '\n';
  return report.pass() ? 0 : 1;
}

}  // namespace qhyp::cli
