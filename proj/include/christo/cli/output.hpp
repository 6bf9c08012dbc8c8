#ifndef CHRISTO_CLI_OUTPUT_HPP
#define CHRISTO_CLI_OUTPUT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "christo/cli/config.hpp"
#include "christo/linalg.hpp"

namespace christo::cli {

/// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

/// RFC-4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(const std::string& text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
/// Hex hash of the canonical config echo.
std::string config_hash(const RunConfig& cfg);

/// tool, version, command, config echo and hash, plus whatever diagnostics
/// the command collected (condition numbers, iterations, ...).
nlohmann::json metadata(const RunConfig& cfg, const nlohmann::json& diagnostics);

nlohmann::json matrix_json(const Matrix& m);
/// {"labels": [...], "rows": [[...], ...]}
nlohmann::json labelled_matrix(const Matrix& m, const std::vector<std::string>& labels);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }

  /// Metadata goes first as "# key: value" lines, then the table.
  void write(std::ostream& os, const nlohmann::json& meta) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Pretty JSON with a "metadata" member prepended to the payload.
void write_json(std::ostream& os, const nlohmann::json& meta, const nlohmann::json& payload);

}  // namespace christo::cli

#endif  // CHRISTO_CLI_OUTPUT_HPP
