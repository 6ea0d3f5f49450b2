#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "projdim/anosov.hpp"
#include "projdim/error.hpp"
#include "projdim/randwalk.hpp"

namespace projdim {

using json = nlohmann::json;

/// Configuration problem tied to a file; path() is reported in error payloads.
class ConfigFileError : public Error {
 public:
  ConfigFileError(std::string path, const std::string& message)
      : Error(ErrorCode::ConfigError, path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// TOML subset: comments, bare keys, [table], [[array.of.tables]] one level
/// deep, strings, numbers, booleans, arrays and inline tables.
json parse_toml(const std::string& text, const std::string& origin = "<toml>");

/// JSON or TOML by extension (.toml, otherwise JSON).
json load_config(const std::string& path);

/// `atoms = [{matrix = [[..],[..],[..]], weight = w, exact = bool}, ...]`,
/// optional `schema = 1`, `label`, top-level `exact`. Missing weights mean
/// uniform. Without any exact flag, all-integer matrices are treated as
/// exact. Field errors name the offending entry.
AtomicMeasure measure_from_json(const json& doc, const std::string& origin);

/// 3x3 matrix from nested arrays; field names the entry in diagnostics.
Mat3 matrix3_from_json(const json& v, const std::string& field, const std::string& origin);
Mat2 matrix2_from_json(const json& v, const std::string& field, const std::string& origin);

/// "rauzy", "diag-test", "schottky2(lambda, theta)" (embedded in SL3).
/// UnknownName otherwise.
std::vector<Mat3> builtin_generators(const std::string& name);
bool is_builtin(const std::string& name);
/// Parameters of "schottky2(lambda, theta)"; nullopt for other names.
std::optional<std::pair<double, double>> parse_schottky_name(const std::string& name);

/// Builtin name (uniform weights) or a measure file.
AtomicMeasure resolve_measure(const std::string& spec);

/// Jump family configuration:
///   base = "schottky2(6, 0.785)"  or  base_generators = [2x2, ...]
///   direction = [3x3, ...]          (defaults to zero)
///   eps = [..] or eps_range = "a:b:c", nmax, tol (optional)
struct JumpConfig {
  std::vector<Mat2> base;
  std::vector<Mat3> direction;
  std::vector<double> eps;
  int n_max = 10;
  double tol = 1e-4;
};

JumpConfig jump_config_from_json(const json& doc, const std::string& origin);

/// "a:b:c" -> a, a + c, ..., up to b (inclusive within c/1000).
std::vector<double> parse_range(const std::string& spec);

}  // namespace projdim
