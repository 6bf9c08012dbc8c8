#include "christo/christoffel.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "christo/errors.hpp"

namespace christo {

namespace {

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

CfEvaluator::CfEvaluator(const MomentMatrix& m, double condition_threshold)
    : basis_(m.basis()), entries_(m.entries()), condition_(m.condition()) {
  if (!m.positive_definite()) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "moment matrix of size " + std::to_string(basis_.size()) +
                    " is not positive definite");
  }
  if (condition_ > condition_threshold) {
    std::ostringstream os;
    os << "moment matrix condition " << condition_ << " exceeds " << condition_threshold
       << "; rescale the data affinely to [-1,1]^d";
    throw Error(ErrorKind::IllConditioned, os.str());
  }
  factor_ = *m.factor();
}

double CfEvaluator::inverse_form(const Vector& v) const {
  return inverse_quadratic_form(factor_, v);
}

Vector CfEvaluator::solve(const Vector& v) const {
  const Vector w = factor_.triangularView<Eigen::Lower>().solve(v);
  return factor_.transpose().triangularView<Eigen::Upper>().solve(w);
}

double CfEvaluator::inverse_value(std::span<const double> point) const {
  return inverse_form(to_vector(basis_.monomial_vector(point)));
}

double CfEvaluator::value(std::span<const double> point) const {
  return 1.0 / inverse_value(point);
}

double CfEvaluator::kernel(std::span<const double> a, std::span<const double> b) const {
  const Vector va = to_vector(basis_.monomial_vector(a));
  const Vector vb = to_vector(basis_.monomial_vector(b));
  const auto lower = factor_.triangularView<Eigen::Lower>();
  return lower.solve(va).dot(lower.solve(vb));
}

Polynomial CfEvaluator::kernel_polynomial(std::span<const double> x0) const {
  const Vector c = solve(to_vector(basis_.monomial_vector(x0)));
  Polynomial p(basis_.dim());
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    p.add_term(basis_.at(r), c[static_cast<Eigen::Index>(r)]);
  }
  return p;
}

// ---- orthonormal families ----------------------------------------------------

std::vector<double> OrthonormalFamily::evaluate(std::span<const double> point) const {
  const Vector v = to_vector(basis.monomial_vector(point));
  const Vector pv = coeffs.triangularView<Eigen::Lower>() * v;
  return {pv.data(), pv.data() + pv.size()};
}

Polynomial OrthonormalFamily::polynomial(std::size_t r) const {
  Polynomial p(basis.dim());
  for (std::size_t c = 0; c <= r; ++c) {
    const double v = coeffs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    if (v != 0.0) p.add_term(basis.at(c), v);
  }
  return p;
}

OrthonormalFamily orthonormal_det(const MomentSequence& seq, const OrderedBasis& basis) {
  if (basis.size() > kMaxDeterminantBasis) {
    throw Error(ErrorKind::InvalidArgument,
                "determinant construction limited to " +
                    std::to_string(kMaxDeterminantBasis) + " basis elements");
  }
  const MomentMatrix m = moment_matrix(seq, basis);
  if (!m.positive_definite()) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "moment matrix is not positive definite");
  }
  const auto s = static_cast<Eigen::Index>(basis.size());
  OrthonormalFamily fam{basis, Matrix::Zero(s, s), std::vector<double>(s)};
  for (Eigen::Index r = 0; r < s; ++r) {
    const Matrix block = m.entries().topLeftCorner(r + 1, r + 1);
    // Cofactors of the last row do not depend on that row's content:
    // C(r, c) = det(block) * (block^{-1})(c, r).
    const Eigen::PartialPivLU<Matrix> lu(block);
    const double det = lu.determinant();
    const Vector cof = det * lu.solve(Vector::Unit(r + 1, r));
    const double norm2 = cof.dot(block * cof);  // L(P~^2)
    if (!(norm2 > 0.0)) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "determinant polynomial has non-positive norm at rank " +
                      std::to_string(r));
    }
    const double tau = 1.0 / std::sqrt(norm2);
    fam.normalizers[r] = tau;
    fam.coeffs.row(r).head(r + 1) = tau * cof.transpose();
  }
  return fam;
}

OrthonormalFamily orthonormal_chol(const MomentMatrix& m) {
  if (!m.positive_definite()) {
    throw Error(ErrorKind::NotPositiveDefinite, "moment matrix is not positive definite");
  }
  const Matrix& l = *m.factor();
  const auto s = l.rows();
  OrthonormalFamily fam{m.basis(),
                        l.triangularView<Eigen::Lower>().solve(Matrix::Identity(s, s)),
                        std::vector<double>(s)};
  // Leading coefficient of P~_r is det of the previous leading block.
  double prev_det = 1.0;
  for (Eigen::Index r = 0; r < s; ++r) {
    fam.normalizers[r] = fam.coeffs(r, r) / prev_det;
    prev_det *= l(r, r) * l(r, r);
  }
  return fam;
}

double inverse_cf_sum(const OrthonormalFamily& family, std::span<const double> point) {
  double s = 0.0;
  for (double p : family.evaluate(point)) s += p * p;
  return s;
}

std::vector<PointScore> score_points(const CfEvaluator& e,
                                     const std::vector<std::vector<double>>& points,
                                     double gamma) {
  std::vector<PointScore> out;
  out.reserve(points.size());
  const double scale = static_cast<double>(e.basis().size());
  for (const auto& p : points) {
    const double s = scale * e.value(p);
    out.push_back({p, s, s >= gamma});
  }
  return out;
}

// ---- recurrence route ----------------------------------------------------------

RecurrenceCf::RecurrenceCf(Recurrence rec, unsigned t) : rec_(std::move(rec)), t_(t) {
  if (rec_.size() < t + 1) {
    throw Error(ErrorKind::InvalidArgument,
                "recurrence has " + std::to_string(rec_.size()) +
                    " coefficients, degree " + std::to_string(t) + " needs " +
                    std::to_string(t + 1));
  }
}

double RecurrenceCf::inverse_value(double x) const {
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(rec_.mass);
  double sum = cur * cur;
  for (unsigned k = 0; k < t_; ++k) {
    const double next = ((x - rec_.a[k]) * cur - rec_.b[k] * prev) / rec_.b[k + 1];
    prev = cur;
    cur = next;
    sum += cur * cur;
  }
  return sum;
}

}  // namespace christo
