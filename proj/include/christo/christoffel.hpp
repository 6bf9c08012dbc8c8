#ifndef CHRISTO_CHRISTOFFEL_HPP
#define CHRISTO_CHRISTOFFEL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "christo/basis.hpp"
#include "christo/linalg.hpp"
#include "christo/moments.hpp"
#include "christo/polynomial.hpp"
#include "christo/quadrature.hpp"

namespace christo {

/// Christoffel function Lambda_t(x) = [v_t(x)^T M_t^{-1} v_t(x)]^{-1} of a
/// positive definite moment matrix. Evaluation uses one triangular solve
/// against the stored Cholesky factor.
class CfEvaluator {
 public:
  explicit CfEvaluator(const MomentMatrix& m,
                       double condition_threshold = kConditionThreshold);

  const OrderedBasis& basis() const { return basis_; }
  const Matrix& factor() const { return factor_; }
  const Matrix& moment_matrix() const { return entries_; }
  unsigned degree() const { return basis_.degree(); }
  std::size_t dim() const { return basis_.dim(); }
  double condition() const { return condition_; }

  /// v^T M^{-1} v for an arbitrary coefficient vector in the basis.
  double inverse_form(const Vector& v) const;
  /// M^{-1} v.
  Vector solve(const Vector& v) const;

  double value(std::span<const double> point) const;
  /// 1 / value(point), computed directly.
  double inverse_value(std::span<const double> point) const;
  /// Christoffel-Darboux kernel K_t(a, b) = v(a)^T M^{-1} v(b).
  double kernel(std::span<const double> a, std::span<const double> b) const;
  /// The polynomial z -> K_t(x0, z).
  Polynomial kernel_polynomial(std::span<const double> x0) const;

 private:
  OrderedBasis basis_;
  Matrix entries_;
  Matrix factor_;
  double condition_;
};

inline CfEvaluator build_cf(const MomentMatrix& m,
                            double condition_threshold = kConditionThreshold) {
  return CfEvaluator(m, condition_threshold);
}

inline double cf_value(const CfEvaluator& e, std::span<const double> point) {
  return e.value(point);
}

inline double cd_kernel(const CfEvaluator& e, std::span<const double> a,
                        std::span<const double> b) {
  return e.kernel(a, b);
}

/// Orthonormal polynomials, one per basis rank. Row r of coeffs holds the
/// monomial coefficients of P_r; the table is lower triangular in rank.
/// normalizers[r] = tau_r > 0 with P_r = tau_r * P~_r, where P~_r is the
/// determinant polynomial of the leading (r+1) x (r+1) block whose last row
/// is replaced by monomials.
struct OrthonormalFamily {
  OrderedBasis basis;
  Matrix coeffs;
  std::vector<double> normalizers;

  std::vector<double> evaluate(std::span<const double> point) const;
  Polynomial polynomial(std::size_t r) const;
};

/// Largest basis accepted by the determinant construction.
inline constexpr std::size_t kMaxDeterminantBasis = 50;

/// Determinant recipe: cofactor expansion of the monomial row of each leading
/// block, cofactors from an LU factorization of that block.
OrthonormalFamily orthonormal_det(const MomentSequence& seq, const OrderedBasis& basis);

/// Rows of L^{-1} where M = L L^T.
OrthonormalFamily orthonormal_chol(const MomentMatrix& m);

/// sum_r P_r(point)^2, the reciprocal of the Christoffel function.
double inverse_cf_sum(const OrthonormalFamily& family, std::span<const double> point);

struct PointScore {
  std::vector<double> point;
  double score;   // s(t) * Lambda_t(point), s(t) the basis size
  bool inside;    // score >= gamma
};

std::vector<PointScore> score_points(const CfEvaluator& e,
                                     const std::vector<std::vector<double>>& points,
                                     double gamma);

/// Univariate Christoffel function from three-term recurrence coefficients.
/// Stable at degrees where monomial moment matrices are hopeless.
class RecurrenceCf {
 public:
  RecurrenceCf(Recurrence rec, unsigned t);

  unsigned degree() const { return t_; }
  double inverse_value(double x) const;
  double value(double x) const { return 1.0 / inverse_value(x); }

 private:
  Recurrence rec_;
  unsigned t_;
};

}  // namespace christo

#endif  // CHRISTO_CHRISTOFFEL_HPP
