#ifndef CHRISTO_DISINTEGRATION_HPP
#define CHRISTO_DISINTEGRATION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "christo/christoffel.hpp"
#include "christo/maxdet.hpp"
#include "christo/moments.hpp"
#include "christo/quadrature.hpp"

namespace christo {

/// Joint CF over basis(n, p, t) and the CF of the marginal on the first n
/// variables, both from the same moment sequence.
struct JointModel {
  CfEvaluator joint;
  CfEvaluator marginal;

  std::size_t n() const { return joint.basis().n(); }
  std::size_t p() const { return joint.basis().p(); }
  unsigned degree() const { return joint.degree(); }
};

struct ModelOptions {
  double jitter = 0.0;
  double condition_threshold = kConditionThreshold;
  unsigned quad_order = kDefaultQuadOrder;
};

JointModel build_joint(const MomentSequence& seq, std::size_t n, unsigned t,
                       const ModelOptions& opts = {});
/// Moments of the measure at degree 2t, then build_joint with p = dim - n.
JointModel build_joint(const MeasureSpec& spec, std::size_t n, unsigned t,
                       const ModelOptions& opts = {});

/// Coefficients in y of p_t(y; x) = Lambda^phi_t(x) / Lambda^mu_t(x, y).
struct ConditionalSos {
  std::size_t p = 1;
  std::map<MultiIndex, double> coeffs;  // keyed by the y multi-index
  double marginal_cf = 0.0;

  /// Dense coefficients c_0..c_{2t} (p = 1 only).
  std::vector<double> univariate() const;
  double evaluate(std::span<const double> y) const;
};

ConditionalSos conditional_sos(const JointModel& model, std::span<const double> x);

struct DisintegrationDiagnostics {
  double joint_condition = 0.0;
  double marginal_condition = 0.0;
  double hankel_condition = 0.0;
  int newton_iterations = 0;
  double gram_residual = 0.0;
  bool extreme_conditioning = false;
};

struct DisintegrationResult {
  std::vector<double> x;
  unsigned t = 0;
  double marginal_cf = 0.0;
  std::vector<double> sos;       // p_t(y; x), c_0..c_{2t}
  MaxDetResult maxdet;           // gram Q*, hankel H = (Q*)^{-1}, dual lambda*
  AtomicMeasure measure;         // representing measure of lambda*
  double mass = 0.0;             // lambda*_0, not forced to 1
  DisintegrationDiagnostics diagnostics;

  const Matrix& hankel() const { return maxdet.hankel; }
  /// Lambda^{nu_{x,t}}_t(y) = [v_t(y)^T H^{-1} v_t(y)]^{-1}.
  double conditional_cf(double y) const;
};

/// Marginal CF below this value is flagged as extreme conditioning.
inline constexpr double kExtremeMarginalCf = 1e-14;

DisintegrationResult disintegrate_at(const JointModel& model, std::span<const double> x);

/// max over the grid of |Lambda^mu(x,y) - Lambda^phi(x) Lambda^nu(y)| / Lambda^mu(x,y).
double factorization_residual(const JointModel& model, const DisintegrationResult& result,
                              std::span<const double> y_grid);
double factorization_residual(const JointModel& model, std::span<const double> x,
                              std::span<const double> y_grid);

struct SweepRow {
  unsigned t;
  double value;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::optional<double> slope;      // least-squares slope of log(value) vs t
  std::optional<double> r_squared;
};

struct SweepOptions {
  std::size_t n = 1;  // conditioning variables
  ModelOptions model;
};

/// (t, Lambda^{nu_{x,t}}_t(y)) for each t, plus a log-linear fit.
SweepTable decay_sweep(const MeasureSpec& spec, std::span<const double> x, double y,
                       const std::vector<unsigned>& t_list, const SweepOptions& opts = {});

/// (t, t * Lambda^{nu_{x,t}}_t(y)). For a one-dimensional measure the rows hold
/// t * Lambda_t(x) of the measure itself, computed from its recurrence
/// coefficients (y is ignored).
SweepTable asymptotic_sweep(const MeasureSpec& spec, std::span<const double> x, double y,
                            const std::vector<unsigned>& t_list,
                            const SweepOptions& opts = {});

/// Stable univariate Christoffel function of a one-dimensional measure.
RecurrenceCf univariate_cf(const MeasureSpec& spec, unsigned t,
                           unsigned quad_order = kDefaultQuadOrder);

struct ProbeEntry {
  unsigned t;
  std::vector<double> moments;  // lambda* of the conditional at degree t
  double mass;
};

struct ProbeDistance {
  unsigned t;
  unsigned t_next;
  double max_abs_difference;  // leading (t+1)x(t+1) blocks of the two Hankels
};

struct ProbeReport {
  std::vector<ProbeEntry> entries;
  std::vector<ProbeDistance> distances;
};

/// Diagnostic: does the conditional Hankel matrix depend on t?
ProbeReport conjecture_probe(const MeasureSpec& spec, std::span<const double> x,
                             const std::vector<unsigned>& t_list,
                             const SweepOptions& opts = {});

/// Least-squares line through (xs, ys): slope and R^2.
std::pair<double, double> fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace christo

#endif  // CHRISTO_DISINTEGRATION_HPP
