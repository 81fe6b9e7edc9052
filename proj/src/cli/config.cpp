#include "qhyp/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qhyp::cli {

namespace {

const std::set<std::string> kKnownFields{"r", "s", "N", "q", "alpha", "beta", "sweep_k", "t_end", "perturb"};

double finite_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": not finite");
  return v;
}

int integer(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1000000 || v > 1000000) throw ConfigError(where + ": out of range");
  return static_cast<int>(v);
}

std::complex<double> complex_value(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return {finite_number(j, where), 0.0};
  if (j.is_array() && j.size() == 2)
    return {finite_number(j[0], where + "[0]"), finite_number(j[1], where + "[1]")};
  throw ConfigError(where + ": expected a number or [re, im]");
}

std::vector<std::complex<double>> complex_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<std::complex<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_value(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

nlohmann::ordered_json complex_json(std::complex<double> z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKnownFields.count(key)) throw ConfigError("unknown config field \"" + key + "\"");
  for (const char* key : {"N", "q"})
    if (!j.contains(key)) throw ConfigError(std::string("missing config field \"") + key + "\"");

  RunConfig c;
  c.params.N = integer(j["N"], "N");
  c.params.q = complex_value(j["q"], "q");
  if (j.contains("alpha")) c.params.alpha = complex_list(j["alpha"], "alpha");
  if (j.contains("beta")) c.params.beta = complex_list(j["beta"], "beta");
  if (j.contains("r") && integer(j["r"], "r") != c.params.r())
    throw ConfigError("r = " + std::to_string(integer(j["r"], "r")) + " but alpha has " +
                      std::to_string(c.params.r()) + " entries");
  if (j.contains("s") && integer(j["s"], "s") != c.params.s())
    throw ConfigError("s = " + std::to_string(integer(j["s"], "s")) + " but beta has " +
                      std::to_string(c.params.s()) + " entries");
  if (j.contains("sweep_k")) {
    c.sweep_k = integer(j["sweep_k"], "sweep_k");
    if (*c.sweep_k < 0) throw ConfigError("sweep_k must be non-negative");
  }
  if (j.contains("t_end")) {
    c.t_end = finite_number(j["t_end"], "t_end");
    if (*c.t_end < 0) throw ConfigError("t_end must be non-negative");
  }
  if (j.contains("perturb")) {
    c.perturb = finite_number(j["perturb"], "perturb");
    if (*c.perturb < 0) throw ConfigError("perturb must be non-negative");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["r"] = c.params.r();
  j["s"] = c.params.s();
  j["N"] = c.params.N;
  j["q"] = complex_json(c.params.q);
  j["alpha"] = nlohmann::ordered_json::array();
  for (const auto& a : c.params.alpha) j["alpha"].push_back(complex_json(a));
  j["beta"] = nlohmann::ordered_json::array();
  for (const auto& b : c.params.beta) j["beta"].push_back(complex_json(b));
  if (c.sweep_k) j["sweep_k"] = *c.sweep_k;
  if (c.t_end) j["t_end"] = *c.t_end;
  if (c.perturb) j["perturb"] = *c.perturb;
  return j;
}

Precision parse_precision(const std::string& name) {
  if (name == "f64") return Precision::F64;
  if (name == "extended") return Precision::Extended;
  throw ConfigError("unknown precision \"" + name + "\" (expected f64 or extended)");
}

const char* to_string(Precision p) { return p == Precision::F64 ? "f64" : "extended"; }

}  // namespace qhyp::cli
