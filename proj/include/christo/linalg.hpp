#ifndef CHRISTO_LINALG_HPP
#define CHRISTO_LINALG_HPP

#include <optional>

#include <Eigen/Dense>

namespace christo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot floor for the Cholesky factorization: a pivot at or below
/// kPivotTolerance * max(diag) counts as a failure.
inline constexpr double kPivotTolerance = 1e-14;

/// Lower-triangular L with L L^T = a, or nullopt when a pivot falls at or
/// below the relative tolerance (not numerically positive definite).
std::optional<Matrix> cholesky_lower(const Matrix& a,
                                     double rel_tol = kPivotTolerance);

/// 2-norm condition number of a symmetric matrix (ratio of extreme
/// absolute eigenvalues); +inf when singular.
double condition_spd(const Matrix& a);

/// x^T (L L^T)^{-1} x computed as |L^{-1} x|^2.
double inverse_quadratic_form(const Matrix& lower, const Vector& x);

/// (L L^T)^{-1} by two triangular solves.
Matrix inverse_from_cholesky(const Matrix& lower);

}  // namespace christo

#endif  // CHRISTO_LINALG_HPP
