#ifndef CHRISTO_MOMENTS_HPP
#define CHRISTO_MOMENTS_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "christo/basis.hpp"
#include "christo/linalg.hpp"
#include "christo/polynomial.hpp"

namespace christo {

/// Moments y_gamma for every multi-index |gamma| <= order in `dim` variables.
class MomentSequence {
 public:
  MomentSequence(std::size_t dim, unsigned order);

  std::size_t dim() const { return dim_; }
  /// Degree bound 2t of the stored moments.
  unsigned order() const { return order_; }
  /// Largest t with 2t <= order.
  unsigned half_degree() const { return order_ / 2; }

  double value(const MultiIndex& gamma) const;
  void set(const MultiIndex& gamma, double v);
  double mass() const { return value(MultiIndex::zero(dim_)); }

  const std::map<MultiIndex, double>& values() const { return values_; }

  /// Every moment divided by s.
  MomentSequence scaled(double s) const;

 private:
  std::size_t dim_;
  unsigned order_;
  std::map<MultiIndex, double> values_;
};

/// Univariate sequence from dense values (y_0, y_1, ..., y_order).
MomentSequence univariate_sequence(const std::vector<double>& values);
/// Dense values of a univariate sequence.
std::vector<double> dense_values(const MomentSequence& seq);

// ---- measure descriptions ----------------------------------------------

/// Function of x on an interval: dense polynomial coefficients or a table
/// interpolated linearly between abscissae.
struct Profile {
  std::vector<double> poly;            // c0 + c1 x + ...
  std::vector<double> table_x;         // ascending, used when non-empty
  std::vector<double> table_values;

  static Profile polynomial(std::vector<double> coeffs);
  static Profile constant(double c) { return polynomial({c}); }
  static Profile table(std::vector<double> xs, std::vector<double> values);

  bool is_table() const { return !table_x.empty(); }
  double operator()(double x) const;
};

struct SamplesMeasure {
  std::vector<std::vector<double>> points;
};

struct BoxMeasure {
  std::vector<std::array<double, 2>> bounds;
};

/// Uniform (optionally weighted in x) measure on
/// {(x, y) : x in [x_lo, x_hi], a(x) <= y <= b(x)}.
struct CurveRegionMeasure {
  std::array<double, 2> x_interval{-1.0, 1.0};
  Profile lower = Profile::constant(0.0);
  Profile upper = Profile::constant(1.0);
  /// Density in x multiplying the uniform fibre measure; 1 when absent.
  std::optional<Profile> x_weight;
};

struct MeasureSpec {
  std::variant<SamplesMeasure, BoxMeasure, CurveRegionMeasure> shape;
  bool probability = true;

  std::size_t dim() const;
};

inline constexpr unsigned kDefaultQuadOrder = 64;

// ---- moment generation ---------------------------------------------------

/// Empirical moments (1/N) sum_i x_i^gamma up to degree 2t.
MomentSequence moments_from_samples(const std::vector<std::vector<double>>& points,
                                    unsigned t);

/// Probability-normalized moments of the uniform measure on a box.
MomentSequence moments_uniform_box(const std::vector<std::array<double, 2>>& bounds,
                                   unsigned t, bool probability = true);

/// Moments of the region between two curves, by Gauss-Legendre quadrature in x
/// and exact integration along the fibres.
MomentSequence moments_curve_region(const CurveRegionMeasure& region, unsigned t,
                                    unsigned quad_order = kDefaultQuadOrder,
                                    bool probability = true);

MomentSequence moments_of(const MeasureSpec& spec, unsigned t,
                          unsigned quad_order = kDefaultQuadOrder);

/// L_phi(poly) = sum_gamma poly_gamma * phi_gamma.
double riesz_eval(const MomentSequence& seq, const Polynomial& poly);

/// Sequence of the functional q -> L(g q) for every q with deg q + deg g
/// within the order. Its half degree is t - ceil(deg g / 2).
MomentSequence localize_sequence(const MomentSequence& seq, const Polynomial& g);

/// Moments of the marginal on the first n variables: value(alpha) = seq(alpha, 0).
MomentSequence marginal_sequence(const MomentSequence& seq, std::size_t n);

// ---- moment matrices -------------------------------------------------------

inline constexpr double kConditionThreshold = 1e12;

class MomentMatrix {
 public:
  MomentMatrix(OrderedBasis basis, Matrix entries, double jitter);

  const OrderedBasis& basis() const { return basis_; }
  const Matrix& entries() const { return entries_; }
  /// Lower Cholesky factor; present iff the matrix is numerically PD.
  const std::optional<Matrix>& factor() const { return factor_; }
  bool positive_definite() const { return factor_.has_value(); }
  double condition() const { return condition_; }
  double jitter() const { return jitter_; }

 private:
  OrderedBasis basis_;
  Matrix entries_;
  std::optional<Matrix> factor_;
  double condition_;
  double jitter_;
};

/// M(r, c) = seq(pair(r) + pair(c)) (+ jitter on the diagonal).
MomentMatrix moment_matrix(const MomentSequence& seq, const OrderedBasis& basis,
                           double jitter = 0.0);

// ---- sample I/O and preprocessing -------------------------------------------

struct SampleTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> points;
};

/// CSV with a header row, one point per row.
SampleTable read_samples_csv(const std::filesystem::path& path);

/// Per-coordinate affine map x -> (x - center) / half_width onto [-1, 1].
struct AffineRescale {
  std::vector<double> center;
  std::vector<double> half_width;

  static AffineRescale fit(const std::vector<std::vector<double>>& points);
  std::vector<double> apply(const std::vector<double>& point) const;
  std::vector<std::vector<double>> apply(const std::vector<std::vector<double>>& points) const;
};

}  // namespace christo

#endif  // CHRISTO_MOMENTS_HPP
