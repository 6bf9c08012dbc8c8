#ifndef CHRISTO_CLI_CONFIG_HPP
#define CHRISTO_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "christo/moments.hpp"

namespace christo::cli {

inline constexpr const char* kToolName = "christo";
inline constexpr const char* kToolVersion = "0.1.0";

/// Problem in the configuration itself (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  std::vector<double> points() const;
};

/// Parses "min:max:count".
Range parse_range(const std::string& text);
/// Parses "a,b,c" into reals.
std::vector<double> parse_reals(const std::string& text);
std::vector<unsigned> parse_naturals(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<MeasureSpec> measure;
  nlohmann::json measure_json;  // as given, for the metadata echo
  std::optional<unsigned> t;
  std::vector<double> x;
  std::optional<double> y;
  std::optional<Range> y_grid;
  std::vector<Range> grid;
  std::vector<unsigned> t_list;
  std::optional<double> gamma;
  double jitter = 0.0;
  unsigned quad_order = kDefaultQuadOrder;
  double condition_threshold = kConditionThreshold;
  std::optional<std::size_t> n;
  std::string input;
  std::vector<double> poly;
  std::vector<std::vector<double>> generators;
  std::string out;

  /// Canonical JSON of every effective setting (the reproducibility echo).
  nlohmann::json to_json() const;
};

/// Subcommands accepted by run().
const std::vector<std::string>& subcommands();

/// Parses a JSON config object; unknown keys are rejected. `base_dir`
/// resolves relative sample paths.
RunConfig parse_config(const nlohmann::json& j, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

/// MeasureSpec from its JSON description.
MeasureSpec parse_measure(const nlohmann::json& j, const std::string& base_dir = ".");

/// Checks everything the command needs is present and consistent.
void validate(const RunConfig& cfg);

}  // namespace christo::cli

#endif  // CHRISTO_CLI_CONFIG_HPP
