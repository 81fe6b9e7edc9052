#ifndef QHYP_CLI_COMMANDS_HPP
#define QHYP_CLI_COMMANDS_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhyp/cli/config.hpp"
#include "qhyp/cli/report.hpp"

namespace qhyp::cli {

inline constexpr int kDefaultSweepK = 8;
inline constexpr double kDefaultTEnd = 1.0;
inline constexpr int kFlowSamples = 50;
inline constexpr int kQdeSamplePoints = 20;
inline constexpr int kMaxBetaRedraws = 100;

// Parameter validation errors escape as qhyp::Error and mean exit 2. Anything
// thrown later is caught and recorded in Report::error.
Report cmd_poly(const RunConfig& config, const RunOptions& opts);
Report cmd_zeros(const RunConfig& config, const RunOptions& opts);
Report cmd_verify(const RunConfig& config, const RunOptions& opts);
Report cmd_sweep(const RunConfig& config, const RunOptions& opts);

struct TrajectoryRow {
  double t = 0;
  std::vector<std::complex<double>> z;
};

struct FlowResult {
  Report report;
  std::vector<TrajectoryRow> trajectory;
};

FlowResult cmd_flow(const RunConfig& config, const RunOptions& opts);

/// Header `t,re_z1,im_z1,...` then one row per sample.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows, int N);

/// Full command-line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhyp::cli

#endif  // QHYP_CLI_COMMANDS_HPP
