#include "christo/cli/run.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "christo/christoffel.hpp"
#include "christo/disintegration.hpp"
#include "christo/errors.hpp"
#include "christo/kernels.hpp"
#include "christo/maxdet.hpp"
#include "christo/cli/output.hpp"

namespace christo::cli {

using nlohmann::json;

namespace {

// A finite value or null, so JSON stays valid for infinite condition numbers.
json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real_or_null(x));
  return a;
}

std::vector<std::string> coordinate_names(std::size_t d) {
  if (d == 1) return {"x"};
  if (d == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::vector<std::string> univariate_labels(unsigned t) {
  std::vector<std::string> labels;
  for (unsigned k = 0; k <= t; ++k) {
    labels.push_back(k == 0 ? "1" : k == 1 ? "y" : "y^" + std::to_string(k));
  }
  return labels;
}

ModelOptions model_options(const RunConfig& cfg) {
  return {cfg.jitter, cfg.condition_threshold, cfg.quad_order};
}

// Conditioning split: n leading coordinates are x, the rest are y. A
// univariate measure has no y part.
std::size_t split_n(const RunConfig& cfg) {
  const std::size_t d = cfg.measure->dim();
  if (cfg.n) return *cfg.n;
  return d > 1 ? d - 1 : 1;
}

CfEvaluator joint_cf(const RunConfig& cfg, json& diag) {
  const std::size_t d = cfg.measure->dim();
  const std::size_t n = split_n(cfg);
  const auto seq = moments_of(*cfg.measure, *cfg.t, cfg.quad_order);
  const OrderedBasis basis(n, d - n, *cfg.t);
  const MomentMatrix m = moment_matrix(seq, basis, cfg.jitter);
  diag["moment_condition"] = real_or_null(m.condition());
  CfEvaluator cf(m, cfg.condition_threshold);
  return cf;
}

// x values: one point of dimension n, or for n = 1 a list of scalar points.
std::vector<std::vector<double>> conditioning_points(const RunConfig& cfg, std::size_t n) {
  if (n == 1) {
    std::vector<std::vector<double>> pts;
    for (double v : cfg.x) pts.push_back({v});
    return pts;
  }
  if (cfg.x.size() != n) {
    throw ConfigError("x needs " + std::to_string(n) + " comma-separated values");
  }
  return {cfg.x};
}

struct Artifact {
  json diagnostics = json::object();
  std::optional<CsvTable> csv;
  json payload = json::object();
};

Artifact do_moments(const RunConfig& cfg) {
  Artifact a;
  const std::size_t d = cfg.measure->dim();
  const std::size_t n = split_n(cfg);
  const auto seq = moments_of(*cfg.measure, *cfg.t, cfg.quad_order);
  const OrderedBasis basis(n, d - n, *cfg.t);
  const MomentMatrix m = moment_matrix(seq, basis, cfg.jitter);
  a.diagnostics["moment_condition"] = real_or_null(m.condition());
  json moments = json::array();
  for (const auto& gamma : graded_indices(d, 2 * *cfg.t)) {
    moments.push_back({{"index", gamma.exponents()},
                       {"label", monomial_label(gamma, n)},
                       {"value", seq.value(gamma)}});
  }
  a.payload["dimension"] = d;
  a.payload["t"] = *cfg.t;
  a.payload["moments"] = std::move(moments);
  a.payload["moment_matrix"] = labelled_matrix(m.entries(), basis.labels());
  return a;
}

std::vector<std::vector<double>> tensor_grid(const std::vector<Range>& ranges) {
  std::vector<std::vector<double>> axes;
  for (const auto& r : ranges) axes.push_back(r.points());
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    next.reserve(pts.size() * axis.size());
    for (const auto& p : pts) {
      for (double v : axis) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

Artifact do_cf_grid(const RunConfig& cfg) {
  Artifact a;
  const CfEvaluator cf = joint_cf(cfg, a.diagnostics);
  const auto pts = tensor_grid(cfg.grid);
  const auto values = cf_values_parallel(cf, pts);
  auto header = coordinate_names(cf.dim());
  header.push_back("cf");
  if (cfg.gamma) {
    header.push_back("score");
    header.push_back("inside");
  }
  CsvTable table(header);
  const double s = static_cast<double>(cf.basis().size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::string> row;
    for (double v : pts[i]) row.push_back(format_real(v));
    row.push_back(format_real(values[i]));
    if (cfg.gamma) {
      row.push_back(format_real(s * values[i]));
      row.push_back(s * values[i] >= *cfg.gamma ? "1" : "0");
    }
    table.add_row(std::move(row));
  }
  a.diagnostics["basis_size"] = cf.basis().size();
  a.csv = std::move(table);
  return a;
}

json family_json(const OrthonormalFamily& f) {
  return {{"coefficients", labelled_matrix(f.coeffs, f.basis.labels())},
          {"normalizers", vector_json(f.normalizers)}};
}

Artifact do_orthonormal(const RunConfig& cfg) {
  Artifact a;
  const std::size_t d = cfg.measure->dim();
  const std::size_t n = split_n(cfg);
  const auto seq = moments_of(*cfg.measure, *cfg.t, cfg.quad_order);
  const OrderedBasis basis(n, d - n, *cfg.t);
  const MomentMatrix m = moment_matrix(seq, basis, cfg.jitter);
  a.diagnostics["moment_condition"] = real_or_null(m.condition());
  // Builds the evaluator only to enforce the conditioning checks.
  const CfEvaluator guard(m, cfg.condition_threshold);
  const OrthonormalFamily chol = orthonormal_chol(m);
  a.payload["triangular"] = family_json(chol);
  if (basis.size() <= kMaxDeterminantBasis) {
    const OrthonormalFamily det = orthonormal_det(seq, basis);
    a.payload["determinant"] = family_json(det);
    a.payload["max_coefficient_difference"] = (det.coeffs - chol.coeffs).cwiseAbs().maxCoeff();
  }
  return a;
}

json atoms_json(const AtomicMeasure& m) {
  return {{"nodes", vector_json(m.nodes)}, {"weights", vector_json(m.weights)}};
}

Artifact do_disintegrate(const RunConfig& cfg) {
  Artifact a;
  const std::size_t d = cfg.measure->dim();
  const std::size_t n = split_n(cfg);
  if (d <= n) throw ConfigError("disintegrate needs a measure with y coordinates");
  const JointModel model = build_joint(*cfg.measure, n, *cfg.t, model_options(cfg));
  a.diagnostics["joint_condition"] = real_or_null(model.joint.condition());
  a.diagnostics["marginal_condition"] = real_or_null(model.marginal.condition());
  const auto xs = conditioning_points(cfg, n);
  json results = json::array();
  if (model.p() > 1) {
    a.payload["output"] = "coefficients only";
    for (const auto& x : xs) {
      const ConditionalSos sos = conditional_sos(model, x);
      json coeffs = json::array();
      for (const auto& [beta, c] : sos.coeffs) {
        coeffs.push_back({{"index", beta.exponents()},
                          {"label", monomial_label(beta, 0)},
                          {"value", c}});
      }
      results.push_back({{"x", x}, {"marginal_cf", sos.marginal_cf}, {"sos", coeffs}});
    }
    a.payload["results"] = std::move(results);
    return a;
  }
  const Range grid = cfg.y_grid.value_or(Range{-1.5, 1.5, 101});
  const auto ys = grid.points();
  json iterations = json::array();
  json hankel_conditions = json::array();
  for (const auto& x : xs) {
    const DisintegrationResult r = disintegrate_at(model, x);
    const auto labels = univariate_labels(r.t);
    json item;
    item["x"] = x;
    item["t"] = r.t;
    item["marginal_cf"] = r.marginal_cf;
    item["sos"] = vector_json(r.sos);
    item["hankel"] = labelled_matrix(r.hankel(), labels);
    item["gram"] = labelled_matrix(r.maxdet.gram, labels);
    item["dual"] = vector_json(r.maxdet.dual);
    item["atoms"] = atoms_json(r.measure);
    item["mass"] = r.mass;
    item["mass_deviation"] = std::abs(r.mass - 1.0);
    item["residual"] = factorization_residual(model, r, ys);
    item["residual_grid"] = {{"min", grid.min}, {"max", grid.max}, {"count", grid.count}};
    item["status"] = r.maxdet.status;
    item["diagnostics"] = {{"hankel_condition", real_or_null(r.diagnostics.hankel_condition)},
                           {"newton_iterations", r.diagnostics.newton_iterations},
                           {"gram_residual", r.diagnostics.gram_residual},
                           {"extreme_conditioning", r.diagnostics.extreme_conditioning}};
    iterations.push_back(r.diagnostics.newton_iterations);
    hankel_conditions.push_back(real_or_null(r.diagnostics.hankel_condition));
    results.push_back(std::move(item));
  }
  a.diagnostics["newton_iterations"] = std::move(iterations);
  a.diagnostics["hankel_condition"] = std::move(hankel_conditions);
  a.payload["results"] = std::move(results);
  return a;
}

double condition_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return lo > 0 ? es.eigenvalues().maxCoeff() / lo : std::numeric_limits<double>::infinity();
}

Artifact do_maxdet(const RunConfig& cfg) {
  Artifact a;
  const UnivariateSos p(cfg.poly);
  const MaxDetResult r = maxdet_hankel(p);
  const auto labels = univariate_labels(p.half_degree());
  a.diagnostics["newton_iterations"] = r.iterations;
  a.diagnostics["hankel_condition"] = real_or_null(condition_of(r.hankel));
  a.payload["poly"] = p.coeffs();
  a.payload["gram"] = labelled_matrix(r.gram, labels);
  a.payload["hankel"] = labelled_matrix(r.hankel, labels);
  a.payload["dual"] = vector_json(r.dual);
  a.payload["gram_determinant"] = r.gram.determinant();
  a.payload["gradient_norm"] = r.gradient_norm;
  a.payload["decrement"] = r.decrement;
  a.payload["status"] = r.status;
  a.payload["objective_trace"] = vector_json(r.objective_trace);
  try {
    a.payload["atoms"] = atoms_json(hankel_to_atoms(r.dual));
  } catch (const Error& e) {
    a.payload["atoms"] = nullptr;
    a.payload["atoms_error"] = e.what();
  }
  return a;
}

Artifact do_weighted_maxdet(const RunConfig& cfg) {
  Artifact a;
  const WeightedCone cone{cfg.generators, *cfg.t};
  const WeightedMaxDetResult r = weighted_maxdet(cfg.poly, cone);
  a.diagnostics["newton_iterations"] = r.iterations;
  json blocks = json::array();
  json conditions = json::array();
  for (std::size_t j = 0; j < cfg.generators.size(); ++j) {
    const auto labels = univariate_labels(cone.half_degree(j));
    conditions.push_back(real_or_null(condition_of(r.localizing[j])));
    blocks.push_back({{"generator", cfg.generators[j]},
                      {"localizing", labelled_matrix(r.localizing[j], labels)},
                      {"gram", labelled_matrix(r.grams[j], labels)},
                      {"multiplier", vector_json(r.multipliers[j])}});
  }
  a.diagnostics["localizing_condition"] = std::move(conditions);
  a.payload["poly"] = cfg.poly;
  a.payload["t"] = *cfg.t;
  a.payload["dual"] = vector_json(r.dual);
  a.payload["blocks"] = std::move(blocks);
  a.payload["residual"] = r.residual;
  a.payload["gradient_norm"] = r.gradient_norm;
  a.payload["decrement"] = r.decrement;
  a.payload["status"] = r.status;
  a.payload["objective_trace"] = vector_json(r.objective_trace);
  return a;
}

// "-1:1,-2:2" into [[-1,1],[-2,2]].
std::vector<std::vector<double>> parse_box(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ConfigError("box interval must be lo:hi");
    out.push_back(parse_reals(part.substr(0, colon) + "," + part.substr(colon + 1)));
  }
  return out;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.n = split_n(cfg);
  o.model = model_options(cfg);
  return o;
}

Artifact sweep_artifact(const SweepTable& table, const std::string& value_column) {
  Artifact a;
  CsvTable csv({"t", value_column});
  for (const auto& row : table.rows) {
    csv.add_row({std::to_string(row.t), format_real(row.value)});
  }
  if (table.slope) a.diagnostics["log_slope"] = *table.slope;
  if (table.r_squared) a.diagnostics["r_squared"] = *table.r_squared;
  a.csv = std::move(csv);
  return a;
}

Artifact do_decay_sweep(const RunConfig& cfg) {
  const auto table = decay_sweep(*cfg.measure, cfg.x, *cfg.y, cfg.t_list, sweep_options(cfg));
  return sweep_artifact(table, "conditional_cf");
}

Artifact do_asymptotic_sweep(const RunConfig& cfg) {
  const auto table =
      asymptotic_sweep(*cfg.measure, cfg.x, cfg.y.value_or(0.0), cfg.t_list, sweep_options(cfg));
  return sweep_artifact(table, "t_times_cf");
}

Artifact do_conjecture_probe(const RunConfig& cfg) {
  Artifact a;
  const ProbeReport report = conjecture_probe(*cfg.measure, cfg.x, cfg.t_list, sweep_options(cfg));
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"t", e.t}, {"moments", vector_json(e.moments)}, {"mass", e.mass}});
  }
  json distances = json::array();
  for (const auto& d : report.distances) {
    distances.push_back(
        {{"t", d.t}, {"t_next", d.t_next}, {"max_abs_difference", d.max_abs_difference}});
  }
  a.payload["x"] = cfg.x;
  a.payload["entries"] = std::move(entries);
  a.payload["distances"] = std::move(distances);
  return a;
}

Artifact do_score(const RunConfig& cfg) {
  Artifact a;
  const CfEvaluator cf = joint_cf(cfg, a.diagnostics);
  SampleTable table;
  try {
    table = read_samples_csv(cfg.input);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (table.columns.size() != cf.dim()) {
    throw ConfigError("input has " + std::to_string(table.columns.size()) +
                      " columns, the measure has dimension " + std::to_string(cf.dim()));
  }
  const auto scores = score_points(cf, table.points, *cfg.gamma);
  auto header = table.columns;
  header.push_back("score");
  header.push_back("inside");
  CsvTable csv(header);
  for (const auto& s : scores) {
    std::vector<std::string> row;
    for (double v : s.point) row.push_back(format_real(v));
    row.push_back(format_real(s.score));
    row.push_back(s.inside ? "1" : "0");
    csv.add_row(std::move(row));
  }
  a.diagnostics["basis_size"] = cf.basis().size();
  a.csv = std::move(csv);
  return a;
}

Artifact dispatch(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "moments") return do_moments(cfg);
  if (c == "cf-grid") return do_cf_grid(cfg);
  if (c == "orthonormal") return do_orthonormal(cfg);
  if (c == "disintegrate") return do_disintegrate(cfg);
  if (c == "maxdet") return do_maxdet(cfg);
  if (c == "weighted-maxdet") return do_weighted_maxdet(cfg);
  if (c == "decay-sweep") return do_decay_sweep(cfg);
  if (c == "asymptotic-sweep") return do_asymptotic_sweep(cfg);
  if (c == "conjecture-probe") return do_conjecture_probe(cfg);
  if (c == "score") return do_score(cfg);
  throw ConfigError("unknown command '" + c + "'");
}

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    Artifact a = dispatch(cfg);
    const json meta = metadata(cfg, a.diagnostics);
    std::ostringstream buf;
    if (a.csv) {
      a.csv->write(buf, meta);
    } else {
      write_json(buf, meta, a.payload);
    }
    if (cfg.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + cfg.out);
      file << buf.str();
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    report(err, "ConfigError", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    report(err, std::string(to_string(e.kind())), e.what());
    return is_numerical(e.kind()) ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    report(err, "InvalidArgument", e.what());
    return kExitConfig;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Christoffel functions, disintegration and max-det Gram solves", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(0, 1);
  for (const auto& name : subcommands()) app.add_subcommand(name)->fallthrough();

  std::string config_path, x, t_list, y_grid, box, samples, measure, poly, generators;
  std::vector<std::string> grid;
  std::optional<unsigned> t, quad_order;
  std::optional<double> y, gamma, jitter, threshold;
  std::optional<std::size_t> n;
  std::string input, out_path;
  bool rescale = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--t", t, "degree");
  app.add_option("--x", x, "comma-separated conditioning values");
  app.add_option("--y", y, "single y value");
  app.add_option("--y-grid", y_grid, "min:max:count");
  app.add_option("--grid", grid, "min:max:count, once per coordinate");
  app.add_option("--t-list", t_list, "comma-separated degrees");
  app.add_option("--gamma", gamma, "superlevel threshold on the scaled score");
  app.add_option("--jitter", jitter, "ridge added to moment matrices");
  app.add_option("--quad-order", quad_order, "Gauss-Legendre order for region moments");
  app.add_option("--condition-threshold", threshold, "refuse moment matrices above this");
  app.add_option("--n", n, "number of conditioning coordinates");
  app.add_option("--input", input, "CSV of points to score");
  app.add_option("--poly", poly, "comma-separated coefficients, constant first");
  app.add_option("--generators", generators, "semicolon-separated coefficient lists");
  app.add_option("--box", box, "uniform box measure, e.g. -1:1,-1:1");
  app.add_option("--samples", samples, "empirical measure from a CSV file");
  app.add_flag("--rescale", rescale, "map samples affinely onto [-1,1]^d");
  app.add_option("--measure", measure, "measure as inline JSON");
  app.add_option("--out", out_path, "output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    out << (e.get_name() == "CallForVersion" ? std::string(kToolVersion) + "\n" : app.help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, "ConfigError", e.what());
    return kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
    if (!box.empty()) {
      json bounds = json::array();
      for (const auto& part : parse_box(box)) bounds.push_back(part);
      cfg.measure_json = {{"type", "uniform_box"}, {"bounds", bounds}};
    } else if (!samples.empty()) {
      cfg.measure_json = {{"type", "samples"}, {"file", samples}, {"rescale", rescale}};
    } else if (!measure.empty()) {
      try {
        cfg.measure_json = json::parse(measure);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("--measure: ") + e.what());
      }
    }
    if (!box.empty() || !samples.empty() || !measure.empty()) {
      cfg.measure = parse_measure(cfg.measure_json);
    }
    if (t) cfg.t = *t;
    if (!x.empty()) cfg.x = parse_reals(x);
    if (y) cfg.y = *y;
    if (!y_grid.empty()) cfg.y_grid = parse_range(y_grid);
    if (!grid.empty()) {
      cfg.grid.clear();
      for (const auto& g : grid) cfg.grid.push_back(parse_range(g));
    }
    if (!t_list.empty()) cfg.t_list = parse_naturals(t_list);
    if (gamma) cfg.gamma = *gamma;
    if (jitter) cfg.jitter = *jitter;
    if (quad_order) cfg.quad_order = *quad_order;
    if (threshold) cfg.condition_threshold = *threshold;
    if (n) cfg.n = *n;
    if (!input.empty()) cfg.input = input;
    if (!poly.empty()) cfg.poly = parse_reals(poly);
    if (!generators.empty()) {
      cfg.generators.clear();
      std::istringstream is(generators);
      std::string part;
      while (std::getline(is, part, ';')) cfg.generators.push_back(parse_reals(part));
    }
    if (!out_path.empty()) cfg.out = out_path;
  } catch (const ConfigError& e) {
    report(err, "ConfigError", e.what());
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace christo::cli
