#ifndef CHRISTO_CLI_RUN_HPP
#define CHRISTO_CLI_RUN_HPP

#include <ostream>
#include <string>
#include <vector>

#include "christo/cli/config.hpp"

namespace christo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

/// Executes one validated command. The artifact goes to cfg.out when set,
/// otherwise to `out`. Errors are reported on `err` as a JSON object.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: parse flags (and --config), validate, run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace christo::cli

#endif  // CHRISTO_CLI_RUN_HPP
