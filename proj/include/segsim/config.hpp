#pragma once

// Line-oriented scenario files:
//
//   # comment
//   [scenario fig4]
//   kind = protocol2
//   seed = 7
//   c = 0.8
//
// Every key is checked against the schema of its scenario kind; unset keys
// take the documented defaults.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace segsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class ScenarioKind {
  Nash,
  Protocol1,
  Protocol2,
  Protocol3,
  SweepC,
  Opinion,
  BenchArm,
  VerifyMyopic,
};

// "nash", "protocol1", ..., "sweep_c", "bench_arm", "verify_myopic".
// Hyphens are accepted in place of underscores.
std::optional<ScenarioKind> kind_from_string(std::string_view s);
std::string to_string(ScenarioKind kind);
std::vector<ScenarioKind> all_kinds();

using ParamValue = std::variant<std::int64_t, double, bool, std::string,
                                std::vector<double>, Eigen::MatrixXd>;

enum class ParamType { Int, Real, Bool, Text, RealList, Matrix };

struct ParamSchema {
  std::string key;
  ParamType type;
  std::string default_text;
  std::string help;
};

// Keys accepted by a kind, besides "kind", "seed" and "output".
const std::vector<ParamSchema>& schema(ScenarioKind kind);

// Parses `text` as a value of `type`; throws ConfigError on mismatch.
ParamValue parse_value(ParamType type, std::string_view text,
                       std::size_t line = 0);

struct ScenarioSpec {
  std::string name;
  ScenarioKind kind = ScenarioKind::Nash;
  std::uint64_t seed = 1;
  std::map<std::string, ParamValue> parameters;
  std::string output_path;  // file stem, relative to the output directory

  std::int64_t integer(const std::string& key) const;
  std::size_t count(const std::string& key) const;  // non-negative integer
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
  const Eigen::MatrixXd& matrix(const std::string& key) const;
};

// A spec of the given kind with all defaults filled in.
ScenarioSpec default_spec(ScenarioKind kind, std::string name);

// Overrides one parameter by key; "seed" and "output" are accepted too.
void set_parameter(ScenarioSpec& spec, const std::string& key,
                   std::string_view value, std::size_t line = 0);

std::vector<ScenarioSpec> parse_config(std::string_view text);

}  // namespace segsim
