#include "qhyp/cli/report.hpp"

#include <algorithm>
#include <cmath>

namespace qhyp::cli {

void Report::at_most(const std::string& name, double value, double threshold, const RunOptions& opts) {
  const double t = opts.tol.value_or(threshold);
  checks.push_back({name, value, t, false, value <= t});
}

void Report::above(const std::string& name, double value, double threshold) {
  checks.push_back({name, value, threshold, true, value > threshold});
}

bool Report::pass() const {
  return !error && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::ordered_json Report::to_json(bool with_wall_time) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = config;
  j["options"] = options;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    // JSON has no NaN or infinity
    if (std::isfinite(c.value))
      e["value"] = c.value;
    else
      e["value"] = nullptr;
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["pass"] = pass();
  if (error) j["error"] = *error;
  j["data"] = data;
  if (with_wall_time) j["wall_time_s"] = wall_time_s;
  return j;
}

}  // namespace qhyp::cli
