#ifndef QHYP_CLI_CONFIG_HPP
#define QHYP_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qhyp/params.hpp"

namespace qhyp::cli {

/// Malformed input or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Precision { F64, Extended };

/// Contents of the JSON config file. q, alpha and beta entries may be a number
/// or a two-element [re, im] array.
struct RunConfig {
  ParamSet<double> params;
  std::optional<int> sweep_k;
  std::optional<double> t_end;
  std::optional<double> perturb;
};

/// Options from the command line.
struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  Precision precision = Precision::F64;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical form: complex values always as [re, im], optional fields only when set.
nlohmann::ordered_json to_json(const RunConfig& config);

nlohmann::ordered_json complex_json(std::complex<double> z);

Precision parse_precision(const std::string& name);
const char* to_string(Precision p);

}  // namespace qhyp::cli

#endif  // QHYP_CLI_CONFIG_HPP
