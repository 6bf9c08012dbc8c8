#include "christo/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "christo/errors.hpp"

namespace christo::cli {

using nlohmann::json;

std::vector<double> Range::points() const {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {min};
  out.reserve(count);
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? max : min + step * static_cast<double>(i));
  }
  return out;
}

namespace {

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

Range range_from_json(const json& j, const std::string& key) {
  if (j.is_string()) return parse_range(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("'" + key + "' must be \"min:max:count\" or an object");
  reject_unknown(j, {"min", "max", "count"}, key);
  Range r{get_as<double>(j, "min"), get_as<double>(j, "max"), get_as<std::size_t>(j, "count")};
  if (!(r.max >= r.min)) throw ConfigError("'" + key + "': max must be >= min");
  return r;
}

Profile profile_from_json(const json& j, const std::string& key) {
  if (j.is_number()) return Profile::constant(j.get<double>());
  if (j.is_array()) {
    try {
      return Profile::polynomial(j.get<std::vector<double>>());
    } catch (const json::exception& e) {
      throw ConfigError("'" + key + "': " + e.what());
    }
  }
  if (j.is_object()) {
    reject_unknown(j, {"x", "values"}, key);
    try {
      return Profile::table(get_as<std::vector<double>>(j, "x"),
                            get_as<std::vector<double>>(j, "values"));
    } catch (const Error& e) {
      throw ConfigError("'" + key + "': " + e.what());
    }
  }
  throw ConfigError("'" + key + "' must be a number, coefficient array or {x, values} table");
}

}  // namespace

Range parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("range must be min:max:count, got '" + text + "'");
  Range r{to_real(parts[0]), to_real(parts[1]), 0};
  const double c = to_real(parts[2]);
  if (c < 0 || c != static_cast<double>(static_cast<std::size_t>(c))) {
    throw ConfigError("range count must be a natural number");
  }
  r.count = static_cast<std::size_t>(c);
  if (!(r.max >= r.min)) throw ConfigError("range max must be >= min");
  return r;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(to_real(part));
  return out;
}

std::vector<unsigned> parse_naturals(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& part : split(text, ',')) {
    const double v = to_real(part);
    if (v < 0 || v != static_cast<double>(static_cast<unsigned>(v))) {
      throw ConfigError("not a natural number: '" + part + "'");
    }
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "moments",     "cf-grid",          "orthonormal",      "disintegrate",
      "maxdet",      "weighted-maxdet",  "decay-sweep",      "asymptotic-sweep",
      "conjecture-probe", "score"};
  return names;
}

namespace {

MeasureSpec measure_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("'measure' must be an object");
  const auto type = get_as<std::string>(j, "type");
  MeasureSpec spec;
  spec.probability = j.value("probability", true);
  if (type == "uniform_box") {
    reject_unknown(j, {"type", "bounds", "probability"}, "measure");
    BoxMeasure box;
    for (const auto& b : j.at("bounds")) {
      const auto v = b.get<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("box bounds must be [lo, hi] pairs");
      if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !(v[1] > v[0])) {
        throw ConfigError("box interval must be finite and non-degenerate");
      }
      box.bounds.push_back({v[0], v[1]});
    }
    if (box.bounds.empty()) throw ConfigError("box needs at least one interval");
    spec.shape = std::move(box);
  } else if (type == "curve_region") {
    reject_unknown(j, {"type", "x_interval", "a", "b", "x_density", "probability"}, "measure");
    CurveRegionMeasure region;
    if (j.contains("x_interval")) {
      const auto v = get_as<std::vector<double>>(j, "x_interval");
      if (v.size() != 2 || !(v[1] > v[0])) throw ConfigError("x_interval must be [lo, hi]");
      region.x_interval = {v[0], v[1]};
    }
    if (!j.contains("a") || !j.contains("b")) throw ConfigError("curve_region needs 'a' and 'b'");
    region.lower = profile_from_json(j.at("a"), "a");
    region.upper = profile_from_json(j.at("b"), "b");
    if (j.contains("x_density")) region.x_weight = profile_from_json(j.at("x_density"), "x_density");
    spec.shape = std::move(region);
  } else if (type == "samples") {
    reject_unknown(j, {"type", "file", "columns", "rescale", "probability"}, "measure");
    std::filesystem::path file = get_as<std::string>(j, "file");
    if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
    SampleTable table;
    try {
      table = read_samples_csv(file);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    SamplesMeasure samples;
    if (j.contains("columns")) {
      const auto cols = get_as<std::vector<std::string>>(j, "columns");
      std::vector<std::size_t> pick;
      for (const auto& c : cols) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), c);
        if (it == table.columns.end()) throw ConfigError("no column '" + c + "' in " + file.string());
        pick.push_back(static_cast<std::size_t>(it - table.columns.begin()));
      }
      for (const auto& row : table.points) {
        std::vector<double> p;
        for (std::size_t k : pick) p.push_back(row[k]);
        samples.points.push_back(std::move(p));
      }
    } else {
      samples.points = std::move(table.points);
    }
    if (samples.points.empty()) throw ConfigError("sample file has no rows");
    if (j.value("rescale", false)) {
      samples.points = AffineRescale::fit(samples.points).apply(samples.points);
    }
    spec.shape = std::move(samples);
  } else {
    throw ConfigError("unknown measure type '" + type + "'");
  }
  return spec;
}

}  // namespace

MeasureSpec parse_measure(const json& j, const std::string& base_dir) {
  try {
    return measure_from_json(j, base_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("measure: ") + e.what());
  }
}

RunConfig parse_config(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"command", "measure", "t", "x", "y", "y_grid", "grid", "t_list", "gamma",
                  "jitter", "quad_order", "condition_threshold", "n", "input", "poly",
                  "generators", "out"},
                 "config");
  RunConfig cfg;
  try {
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("measure")) {
      cfg.measure = parse_measure(j.at("measure"), base_dir);
      cfg.measure_json = j.at("measure");
    }
    if (j.contains("t")) cfg.t = j.at("t").get<unsigned>();
    if (j.contains("x")) {
      cfg.x = j.at("x").is_number() ? std::vector<double>{j.at("x").get<double>()}
                                    : j.at("x").get<std::vector<double>>();
    }
    if (j.contains("y")) cfg.y = j.at("y").get<double>();
    if (j.contains("y_grid")) cfg.y_grid = range_from_json(j.at("y_grid"), "y_grid");
    if (j.contains("grid")) {
      for (const auto& g : j.at("grid")) cfg.grid.push_back(range_from_json(g, "grid"));
    }
    if (j.contains("t_list")) cfg.t_list = j.at("t_list").get<std::vector<unsigned>>();
    if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
    if (j.contains("jitter")) cfg.jitter = j.at("jitter").get<double>();
    if (j.contains("quad_order")) cfg.quad_order = j.at("quad_order").get<unsigned>();
    if (j.contains("condition_threshold")) {
      cfg.condition_threshold = j.at("condition_threshold").get<double>();
    }
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("input")) {
      std::filesystem::path in = j.at("input").get<std::string>();
      if (in.is_relative()) in = std::filesystem::path(base_dir) / in;
      cfg.input = in.string();
    }
    if (j.contains("poly")) cfg.poly = j.at("poly").get<std::vector<double>>();
    if (j.contains("generators")) {
      cfg.generators = j.at("generators").get<std::vector<std::vector<double>>>();
    }
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(j, dir.empty() ? "." : dir.string());
}

namespace {

json range_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"count", r.count}}; }

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  if (measure) j["measure"] = measure_json;
  if (t) j["t"] = *t;
  if (!x.empty()) j["x"] = x;
  if (y) j["y"] = *y;
  if (y_grid) j["y_grid"] = range_json(*y_grid);
  if (!grid.empty()) {
    j["grid"] = json::array();
    for (const auto& g : grid) j["grid"].push_back(range_json(g));
  }
  if (!t_list.empty()) j["t_list"] = t_list;
  if (gamma) j["gamma"] = *gamma;
  j["jitter"] = jitter;
  j["quad_order"] = quad_order;
  j["condition_threshold"] = condition_threshold;
  if (n) j["n"] = *n;
  if (!input.empty()) j["input"] = input;
  if (!poly.empty()) j["poly"] = poly;
  if (!generators.empty()) j["generators"] = generators;
  return j;
}

void validate(const RunConfig& cfg) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end()) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  const std::string& c = cfg.command;
  const bool needs_measure = c != "maxdet" && c != "weighted-maxdet";
  if (needs_measure && !cfg.measure) throw ConfigError(c + " needs a measure");
  const bool needs_t = c == "moments" || c == "cf-grid" || c == "orthonormal" ||
                       c == "disintegrate" || c == "score";
  if (needs_t && !cfg.t) throw ConfigError(c + " needs --t");
  if (cfg.t && *cfg.t > kMaxDegree) {
    throw ConfigError("t = " + std::to_string(*cfg.t) + " exceeds the maximum degree " +
                      std::to_string(kMaxDegree));
  }
  if (cfg.jitter < 0.0) throw ConfigError("jitter must be >= 0");
  if (cfg.quad_order == 0) throw ConfigError("quad_order must be >= 1");
  if ((c == "disintegrate" || c == "decay-sweep" || c == "asymptotic-sweep" ||
       c == "conjecture-probe") &&
      cfg.x.empty()) {
    throw ConfigError(c + " needs --x");
  }
  if (c == "decay-sweep" && !cfg.y) throw ConfigError("decay-sweep needs --y");
  if ((c == "decay-sweep" || c == "asymptotic-sweep" || c == "conjecture-probe") &&
      cfg.t_list.empty()) {
    throw ConfigError(c + " needs --t-list");
  }
  if (c == "asymptotic-sweep" && cfg.measure && cfg.measure->dim() > 1 && !cfg.y) {
    throw ConfigError("asymptotic-sweep on a joint measure needs --y");
  }
  if (c == "conjecture-probe" && cfg.t_list.size() < 2) {
    throw ConfigError("conjecture-probe needs at least two degrees in --t-list");
  }
  if (c == "cf-grid" && cfg.grid.empty()) throw ConfigError("cf-grid needs --grid");
  if (c == "score" && cfg.input.empty()) throw ConfigError("score needs --input");
  if (c == "score" && !cfg.gamma) throw ConfigError("score needs --gamma");
  if (c == "maxdet" && cfg.poly.empty()) throw ConfigError("maxdet needs --poly");
  if (c == "weighted-maxdet") {
    if (cfg.poly.empty()) throw ConfigError("weighted-maxdet needs --poly");
    if (cfg.generators.empty()) throw ConfigError("weighted-maxdet needs --generators");
    if (!cfg.t) throw ConfigError("weighted-maxdet needs --t");
  }
  if (cfg.measure && cfg.n && (*cfg.n == 0 || *cfg.n >= cfg.measure->dim())) {
    throw ConfigError("n must satisfy 1 <= n < measure dimension");
  }
  if (cfg.measure && !cfg.grid.empty() && cfg.grid.size() != cfg.measure->dim()) {
    throw ConfigError("grid needs one range per measure coordinate");
  }
}

}  // namespace christo::cli
