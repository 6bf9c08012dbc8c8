#include "christo/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "christo/errors.hpp"

namespace christo::cli {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.to_json().dump())));
  return buf;
}

json metadata(const RunConfig& cfg, const json& diagnostics) {
  json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = cfg.command;
  m["config_hash"] = config_hash(cfg);
  m["config"] = cfg.to_json();
  m["jitter"] = cfg.jitter;
  if (!diagnostics.is_null()) m["diagnostics"] = diagnostics;
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json labelled_matrix(const Matrix& m, const std::vector<std::string>& labels) {
  return {{"labels", labels}, {"rows", matrix_json(m)}};
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw Error(ErrorKind::InvalidArgument, "csv row width does not match the header");
  }
  rows_.push_back(std::move(row));
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << "\r\n";
}

}  // namespace

void CsvTable::write(std::ostream& os, const json& meta) const {
  for (auto it = meta.begin(); it != meta.end(); ++it) {
    const std::string value = it->is_string() ? it->get<std::string>() : it->dump();
    os << "# " << it.key() << ": " << value << "\r\n";
  }
  write_line(os, header_);
  for (const auto& row : rows_) write_line(os, row);
}

void write_json(std::ostream& os, const json& meta, const json& payload) {
  json doc = json::object();
  doc["metadata"] = meta;
  for (auto it = payload.begin(); it != payload.end(); ++it) doc[it.key()] = *it;
  os << doc.dump(2) << '\n';
}

}  // namespace christo::cli
