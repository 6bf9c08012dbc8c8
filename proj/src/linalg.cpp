#include "christo/linalg.hpp"

#include <cmath>
#include <limits>

namespace christo {

std::optional<Matrix> cholesky_lower(const Matrix& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  Matrix l = Matrix::Zero(n, n);
  if (n == 0) return l;
  const double scale = a.diagonal().cwiseAbs().maxCoeff();
  const double floor = rel_tol * (scale > 0 ? scale : 1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

double condition_spd(const Matrix& a) {
  if (a.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double inverse_quadratic_form(const Matrix& lower, const Vector& x) {
  const Vector w = lower.triangularView<Eigen::Lower>().solve(x);
  return w.squaredNorm();
}

Matrix inverse_from_cholesky(const Matrix& lower) {
  const Eigen::Index n = lower.rows();
  Matrix linv = lower.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  return linv.transpose() * linv;
}

}  // namespace christo
