#include "christo/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

#include "christo/errors.hpp"

namespace christo {

double AtomicMeasure::mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

AtomicMeasure gauss_from_recurrence(const Recurrence& rec) {
  const auto n = static_cast<Eigen::Index>(rec.size());
  if (n == 0) return {};
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 0; k < n; ++k) diag[k] = rec.a[k];
  for (Eigen::Index k = 1; k < n; ++k) sub[k - 1] = rec.b[k];

  AtomicMeasure out;
  out.nodes.resize(n);
  out.weights.resize(n);
  if (n == 1) {
    out.nodes[0] = diag[0];
    out.weights[0] = rec.mass;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::MaxIterations, "tridiagonal eigensolver did not converge");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    out.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    out.weights[i] = rec.mass * v0 * v0;
  }
  return out;
}

AtomicMeasure gauss_legendre(unsigned order) {
  if (order == 0) throw Error(ErrorKind::InvalidArgument, "quadrature order must be >= 1");
  Recurrence rec;
  rec.mass = 2.0;
  rec.a.assign(order, 0.0);
  rec.b.assign(order, 0.0);
  for (unsigned k = 1; k < order; ++k) {
    const double kk = static_cast<double>(k);
    rec.b[k] = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  AtomicMeasure rule = gauss_from_recurrence(rec);
  // The rule is exactly symmetric; remove eigensolver asymmetry.
  const std::size_t n = rule.nodes.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

AtomicMeasure hankel_to_atoms(const std::vector<double>& lambda) {
  if (lambda.empty() || lambda.size() % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "hankel_to_atoms needs 2t+1 moments");
  }
  const std::size_t t = lambda.size() / 2;
  const double mass = lambda[0];
  if (!(mass > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Hankel matrix: mass is not positive");
  }
  if (t == 0) return AtomicMeasure{{0.0}, {mass}};

  // Standardize: z = (y - mean) / sd, probability-normalized.
  const double mean = lambda[1] / mass;
  const double var = lambda[2] / mass - mean * mean;
  if (!(var > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Hankel matrix: variance is not positive");
  }
  const double sd = std::sqrt(var);
  std::vector<double> z(2 * t + 2, 0.0);
  for (std::size_t k = 0; k <= 2 * t; ++k) {
    // E[(y - mean)^k] by the binomial expansion.
    double acc = 0.0;
    double binom = 1.0;
    for (std::size_t i = 0; i <= k; ++i) {
      acc += binom * (lambda[i] / mass) * std::pow(-mean, static_cast<double>(k - i));
      binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
    }
    z[k] = acc / std::pow(sd, static_cast<double>(k));
  }
  z[2 * t + 1] = 0.0;  // the free moment

  // Upper Cholesky rows of the (t+1) x (t+2) Hankel array z[i+j].
  const std::size_t n = t + 1;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double d = z[2 * i];
    for (std::size_t k = 0; k < i; ++k) d -= r(k, i) * r(k, i);
    if (!(d > 1e-14 * z[2 * i])) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "Hankel matrix is not positive definite (pivot " +
                      std::to_string(i) + ")");
    }
    r(i, i) = std::sqrt(d);
    for (std::size_t j = i + 1; j <= n; ++j) {
      double s = z[i + j];
      for (std::size_t k = 0; k < i; ++k) s -= r(k, i) * r(k, j);
      r(i, j) = s / r(i, i);
    }
  }
  Recurrence rec;
  rec.mass = 1.0;
  rec.a.resize(n);
  rec.b.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    rec.a[k] = r(k, k + 1) / r(k, k) - (k > 0 ? r(k - 1, k) / r(k - 1, k - 1) : 0.0);
    if (k > 0) rec.b[k] = r(k, k) / r(k - 1, k - 1);
  }
  AtomicMeasure std_atoms = gauss_from_recurrence(rec);
  AtomicMeasure out;
  out.nodes.reserve(n);
  out.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.nodes.push_back(mean + sd * std_atoms.nodes[i]);
    out.weights.push_back(mass * std_atoms.weights[i]);
  }
  return out;
}

std::vector<double> atoms_moments(const AtomicMeasure& measure, unsigned up_to) {
  std::vector<double> m(up_to + 1, 0.0);
  for (std::size_t i = 0; i < measure.nodes.size(); ++i) {
    double p = measure.weights[i];
    for (unsigned k = 0; k <= up_to; ++k) {
      m[k] += p;
      p *= measure.nodes[i];
    }
  }
  return m;
}

Recurrence stieltjes(const AtomicMeasure& measure, std::size_t n) {
  const std::size_t npts = measure.nodes.size();
  const std::set<double> distinct(measure.nodes.begin(), measure.nodes.end());
  if (distinct.size() < n) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "measure has fewer than " + std::to_string(n) + " distinct atoms");
  }
  Recurrence rec;
  rec.mass = measure.mass();
  if (!(rec.mass > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "measure has no mass");
  }
  rec.a.assign(n, 0.0);
  rec.b.assign(n, 0.0);
  // Orthonormal polynomial values at the atoms, scaled by sqrt(weight).
  std::vector<double> prev(npts, 0.0), cur(npts), next(npts);
  for (std::size_t i = 0; i < npts; ++i) cur[i] = std::sqrt(measure.weights[i] / rec.mass);
  for (std::size_t k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t i = 0; i < npts; ++i) a += measure.nodes[i] * cur[i] * cur[i];
    rec.a[k] = a;
    if (k + 1 == n) break;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
      next[i] = (measure.nodes[i] - a) * cur[i] - rec.b[k] * prev[i];
      norm2 += next[i] * next[i];
    }
    const double b = std::sqrt(norm2);
    rec.b[k + 1] = b;
    for (std::size_t i = 0; i < npts; ++i) next[i] /= b;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return rec;
}

}  // namespace christo
