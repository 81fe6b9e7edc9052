#ifndef QHYP_CLI_REPORT_HPP
#define QHYP_CLI_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhyp/cli/config.hpp"

namespace qhyp::cli {

/// One measured quantity against its threshold. Upper-bound checks pass when
/// value <= threshold, lower-bound checks when value > threshold; NaN fails both.
struct Check {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool lower_bound = false;
  bool pass = false;
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  nlohmann::ordered_json options;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  std::optional<std::string> error;  // a computation that threw
  double wall_time_s = 0;

  /// Upper bound; --tol replaces the threshold when given.
  void at_most(const std::string& name, double value, double threshold, const RunOptions& opts);
  /// Lower bound; not affected by --tol.
  void above(const std::string& name, double value, double threshold);

  bool pass() const;
  nlohmann::ordered_json to_json(bool with_wall_time = true) const;
};

}  // namespace qhyp::cli

#endif  // QHYP_CLI_REPORT_HPP
