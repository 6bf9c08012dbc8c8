#include "christo/disintegration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "christo/errors.hpp"

namespace christo {

JointModel build_joint(const MomentSequence& seq, std::size_t n, unsigned t,
                       const ModelOptions& opts) {
  if (n == 0 || n >= seq.dim()) {
    throw Error(ErrorKind::InvalidArgument,
                "conditioning split needs 1 <= n < dim (dim = " +
                    std::to_string(seq.dim()) + ")");
  }
  const OrderedBasis joint_basis(n, seq.dim() - n, t);
  const OrderedBasis marginal_basis(n, 0, t);
  const MomentSequence marginal = marginal_sequence(seq, n);
  return JointModel{
      CfEvaluator(moment_matrix(seq, joint_basis, opts.jitter), opts.condition_threshold),
      CfEvaluator(moment_matrix(marginal, marginal_basis, opts.jitter),
                  opts.condition_threshold)};
}

JointModel build_joint(const MeasureSpec& spec, std::size_t n, unsigned t,
                       const ModelOptions& opts) {
  return build_joint(moments_of(spec, t, opts.quad_order), n, t, opts);
}

// ---- conditional SOS -----------------------------------------------------------

std::vector<double> ConditionalSos::univariate() const {
  if (p != 1) throw Error(ErrorKind::InvalidArgument, "conditional is not univariate");
  unsigned deg = 0;
  for (const auto& [beta, c] : coeffs) deg = std::max(deg, beta[0]);
  std::vector<double> out(deg + 1, 0.0);
  for (const auto& [beta, c] : coeffs) out[beta[0]] = c;
  return out;
}

double ConditionalSos::evaluate(std::span<const double> y) const {
  double s = 0.0;
  for (const auto& [beta, c] : coeffs) s += c * beta.evaluate(y);
  return s;
}

ConditionalSos conditional_sos(const JointModel& model, std::span<const double> x) {
  const OrderedBasis& basis = model.joint.basis();
  const std::size_t n = basis.n();
  if (x.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "conditioning point has wrong dimension");
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "x must be finite");
  }
  // v_t(x, y) = sum_beta y^beta u_beta(x): column u_beta holds x^alpha at the
  // ranks of (alpha, beta).
  const std::vector<MultiIndex> ys = graded_indices(basis.p(), basis.degree());
  std::map<MultiIndex, Eigen::Index> column;
  for (std::size_t j = 0; j < ys.size(); ++j) column.emplace(ys[j], static_cast<Eigen::Index>(j));
  const auto s = static_cast<Eigen::Index>(basis.size());
  Matrix u = Matrix::Zero(s, static_cast<Eigen::Index>(ys.size()));
  for (Eigen::Index r = 0; r < s; ++r) {
    const MultiIndex& pair = basis.at(static_cast<std::size_t>(r));
    u(r, column.at(pair.tail(n))) = pair.head(n).evaluate(x);
  }
  const Matrix w = model.joint.factor().triangularView<Eigen::Lower>().solve(u);
  const Matrix g = w.transpose() * w;

  ConditionalSos out;
  out.p = basis.p();
  out.marginal_cf = model.marginal.value(x);
  for (std::size_t a = 0; a < ys.size(); ++a) {
    for (std::size_t b = 0; b < ys.size(); ++b) {
      out.coeffs[ys[a] + ys[b]] +=
          out.marginal_cf * g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

// ---- single disintegration ----------------------------------------------------------

double DisintegrationResult::conditional_cf(double y) const {
  const auto& h = maxdet.hankel;
  const Eigen::Index n = h.rows();
  Vector v(n);
  double pw = 1.0;
  for (Eigen::Index k = 0; k < n; ++k, pw *= y) v[k] = pw;
  const auto l = cholesky_lower(h, 0.0);
  if (!l) throw Error(ErrorKind::NotPositiveDefinite, "conditional Hankel matrix is not PD");
  return 1.0 / inverse_quadratic_form(*l, v);
}

DisintegrationResult disintegrate_at(const JointModel& model, std::span<const double> x) {
  if (model.p() != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "disintegrate_at needs a single conditional variable; use conditional_sos "
                "for coefficients only");
  }
  const ConditionalSos sos = conditional_sos(model, x);
  DisintegrationResult res;
  res.x.assign(x.begin(), x.end());
  res.t = model.degree();
  res.marginal_cf = sos.marginal_cf;
  res.sos = sos.univariate();
  res.sos.resize(2 * res.t + 1, 0.0);
  res.maxdet = maxdet_hankel(UnivariateSos(res.sos));
  res.measure = hankel_to_atoms(res.maxdet.dual);
  res.mass = res.maxdet.dual.front();

  auto& d = res.diagnostics;
  d.joint_condition = model.joint.condition();
  d.marginal_condition = model.marginal.condition();
  d.hankel_condition = condition_spd(res.maxdet.hankel);
  d.newton_iterations = res.maxdet.iterations;
  d.gram_residual = res.maxdet.gradient_norm;
  d.extreme_conditioning =
      res.marginal_cf < kExtremeMarginalCf || d.hankel_condition > kConditionThreshold;
  return res;
}

double factorization_residual(const JointModel& model, const DisintegrationResult& result,
                              std::span<const double> y_grid) {
  double worst = 0.0;
  std::vector<double> point(result.x);
  point.push_back(0.0);
  for (double y : y_grid) {
    point.back() = y;
    const double joint = model.joint.value(point);
    const double product = result.marginal_cf * result.conditional_cf(y);
    worst = std::max(worst, std::abs(joint - product) / joint);
  }
  return worst;
}

double factorization_residual(const JointModel& model, std::span<const double> x,
                              std::span<const double> y_grid) {
  if (y_grid.empty()) return 0.0;
  return factorization_residual(model, disintegrate_at(model, x), y_grid);
}

// ---- sweeps -----------------------------------------------------------------------------

std::pair<double, double> fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "line fit needs two or more points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2};
}

namespace {

void fit_log(SweepTable& table) {
  if (table.rows.size() < 2) return;
  std::vector<double> ts, logs;
  for (const auto& r : table.rows) {
    if (!(r.value > 0.0)) return;
    ts.push_back(r.t);
    logs.push_back(std::log(r.value));
  }
  const auto [slope, r2] = fit_line(ts, logs);
  table.slope = slope;
  table.r_squared = r2;
}

DisintegrationResult disintegrate_spec(const MeasureSpec& spec, std::span<const double> x,
                                       unsigned t, const SweepOptions& opts) {
  const JointModel model = build_joint(spec, opts.n, t, opts.model);
  return disintegrate_at(model, x);
}

}  // namespace

SweepTable decay_sweep(const MeasureSpec& spec, std::span<const double> x, double y,
                       const std::vector<unsigned>& t_list, const SweepOptions& opts) {
  if (!std::is_sorted(t_list.begin(), t_list.end())) {
    throw Error(ErrorKind::InvalidArgument, "t list must be ascending");
  }
  SweepTable table;
  for (unsigned t : t_list) {
    const DisintegrationResult r = disintegrate_spec(spec, x, t, opts);
    table.rows.push_back({t, r.conditional_cf(y)});
  }
  fit_log(table);
  return table;
}

RecurrenceCf univariate_cf(const MeasureSpec& spec, unsigned t, unsigned quad_order) {
  if (spec.dim() != 1) {
    throw Error(ErrorKind::InvalidArgument, "univariate_cf needs a one-dimensional measure");
  }
  AtomicMeasure atoms;
  if (const auto* box = std::get_if<BoxMeasure>(&spec.shape)) {
    const auto [a, b] = box->bounds.front();
    if (!(b > a)) throw Error(ErrorKind::InvalidArgument, "degenerate interval");
    const unsigned order = std::max(quad_order, 2 * (t + 1));
    const AtomicMeasure rule = gauss_legendre(order);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      atoms.nodes.push_back(0.5 * (a + b) + half * rule.nodes[i]);
      // Probability: weights sum to 1; raw: sum to b - a.
      atoms.weights.push_back(spec.probability ? 0.5 * rule.weights[i]
                                               : half * rule.weights[i]);
    }
  } else if (const auto* samples = std::get_if<SamplesMeasure>(&spec.shape)) {
    const double w = 1.0 / static_cast<double>(samples->points.size());
    for (const auto& p : samples->points) {
      atoms.nodes.push_back(p.front());
      atoms.weights.push_back(w);
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "curve regions are two-dimensional");
  }
  return RecurrenceCf(stieltjes(atoms, t + 1), t);
}

SweepTable asymptotic_sweep(const MeasureSpec& spec, std::span<const double> x, double y,
                            const std::vector<unsigned>& t_list, const SweepOptions& opts) {
  SweepTable table;
  for (unsigned t : t_list) {
    double v;
    if (spec.dim() == 1) {
      if (x.size() != 1) throw Error(ErrorKind::InvalidArgument, "x must be a scalar");
      v = univariate_cf(spec, t, opts.model.quad_order).value(x.front());
    } else {
      v = disintegrate_spec(spec, x, t, opts).conditional_cf(y);
    }
    table.rows.push_back({t, static_cast<double>(t) * v});
  }
  return table;
}

ProbeReport conjecture_probe(const MeasureSpec& spec, std::span<const double> x,
                             const std::vector<unsigned>& t_list, const SweepOptions& opts) {
  if (t_list.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "conjecture probe needs at least two degrees");
  }
  if (!std::is_sorted(t_list.begin(), t_list.end())) {
    throw Error(ErrorKind::InvalidArgument, "t list must be ascending");
  }
  ProbeReport report;
  for (unsigned t : t_list) {
    const DisintegrationResult r = disintegrate_spec(spec, x, t, opts);
    report.entries.push_back({t, r.maxdet.dual, r.mass});
  }
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    const auto& lo = report.entries[i];
    const auto& hi = report.entries[i + 1];
    // Leading (t+1)x(t+1) Hankel block involves moments 0..2t.
    double d = 0.0;
    for (std::size_t k = 0; k < lo.moments.size(); ++k) {
      d = std::max(d, std::abs(hi.moments[k] - lo.moments[k]));
    }
    report.distances.push_back({lo.t, hi.t, d});
  }
  return report;
}

}  // namespace christo
