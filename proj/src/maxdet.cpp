#include "christo/maxdet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <limits>

#include "christo/errors.hpp"
#include "christo/polynomial.hpp"

namespace christo {

UnivariateSos::UnivariateSos(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (coeffs_.size() % 2 == 0) coeffs_.push_back(0.0);
}

double UnivariateSos::operator()(double y) const { return horner(coeffs_, y); }

unsigned WeightedCone::half_degree(std::size_t j) const {
  const auto& g = generators.at(j);
  std::size_t deg = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] != 0.0) deg = k;
  }
  return static_cast<unsigned>((deg + 1) / 2);
}

std::vector<double> antidiagonal_sums(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<double> out(n > 0 ? 2 * n - 1 : 0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out[i + j] += a(i, j);
  }
  return out;
}

Matrix hankel_matrix(const std::vector<double>& lambda) {
  const auto n = static_cast<Eigen::Index>((lambda.size() + 1) / 2);
  Matrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = lambda[i + j];
  }
  return h;
}

namespace {

/// One log-det term: the localizing matrix of g applied to lambda,
/// B(lambda)_{ab} = sum_beta g_beta lambda_{a+b+beta}, of size n.
struct Block {
  std::vector<double> g;
  Eigen::Index n;

  Matrix assemble(const Vector& lambda) const {
    Matrix b = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index c = a; c < n; ++c) {
        double s = 0.0;
        for (std::size_t beta = 0; beta < g.size(); ++beta) {
          if (g[beta] != 0.0) s += g[beta] * lambda[a + c + static_cast<Eigen::Index>(beta)];
        }
        b(a, c) = s;
        b(c, a) = s;
      }
    }
    return b;
  }
};

/// f(lambda) = c^T lambda - sum_j log det B_j(lambda) over the blocks' PD domain.
class DualProblem {
 public:
  DualProblem(Vector c, std::vector<Block> blocks)
      : c_(std::move(c)), blocks_(std::move(blocks)) {}

  Eigen::Index size() const { return c_.size(); }
  const Vector& c() const { return c_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Cholesky factors of every block, or false if one is not PD.
  bool factor(const Vector& lambda, std::vector<Matrix>& factors) const {
    factors.clear();
    for (const auto& b : blocks_) {
      auto l = cholesky_lower(b.assemble(lambda), 0.0);
      if (!l) return false;
      factors.push_back(std::move(*l));
    }
    return true;
  }

  double objective(const Vector& lambda, const std::vector<Matrix>& factors) const {
    double f = c_.dot(lambda);
    for (const auto& l : factors) f -= 2.0 * l.diagonal().array().log().sum();
    return f;
  }

  void derivatives(const std::vector<Matrix>& factors, Vector& grad, Matrix& hess) const {
    const Eigen::Index m = size();
    grad = c_;
    hess = Matrix::Zero(m, m);
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      const Block& b = blocks_[j];
      const Matrix w = inverse_from_cholesky(factors[j]);
      const Eigen::Index n = b.n;
      const Eigen::Index span = 2 * n - 1;
      // d[u] = sum_{a+b=u} W_ab;  f(u, v) = sum_{a+b=u, c+d=v} W_da W_bc.
      Vector d = Vector::Zero(span);
      Matrix f = Matrix::Zero(span, span);
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index bb = 0; bb < n; ++bb) {
          d[a + bb] += w(a, bb);
          for (Eigen::Index cc = 0; cc < n; ++cc) {
            const double wbc = w(bb, cc);
            for (Eigen::Index dd = 0; dd < n; ++dd) {
              f(a + bb, cc + dd) += w(dd, a) * wbc;
            }
          }
        }
      }
      const auto gs = static_cast<Eigen::Index>(b.g.size());
      for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index u = std::max<Eigen::Index>(0, k - gs + 1); u <= std::min(k, span - 1); ++u) {
          grad[k] -= b.g[k - u] * d[u];
        }
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index u = std::max<Eigen::Index>(0, k - gs + 1); u <= std::min(k, span - 1); ++u) {
          const double gku = b.g[k - u];
          if (gku == 0.0) continue;
          for (Eigen::Index l = 0; l < m; ++l) {
            for (Eigen::Index v = std::max<Eigen::Index>(0, l - gs + 1); v <= std::min(l, span - 1); ++v) {
              hess(k, l) += gku * b.g[l - v] * f(u, v);
            }
          }
        }
      }
    }
  }

 private:
  Vector c_;
  std::vector<Block> blocks_;
};

// Newton decrement below which full steps are taken.
constexpr double kQuadraticRegion = 0.25;
// Decrement below which a stalled iteration counts as converged.
constexpr double kRoundingFloor = 1e-6;

struct NewtonOutcome {
  Vector lambda;
  std::vector<Matrix> factors;
  int iterations = 0;
  double decrement = 0.0;
  std::string status;
  std::vector<double> trace;
};

Vector newton_direction(const Matrix& hess, const Vector& grad) {
  // Symmetric diagonal scaling before the factorization.
  const Vector dscale = hess.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const Matrix hs = dscale.asDiagonal() * hess * dscale.asDiagonal();
  const Vector rhs = -(dscale.asDiagonal() * grad);
  Eigen::LLT<Matrix> llt(hs);
  Vector y;
  if (llt.info() == Eigen::Success) {
    y = llt.solve(rhs);
  } else {
    y = hs.ldlt().solve(rhs);
  }
  return dscale.asDiagonal() * y;
}

NewtonOutcome minimize_dual(const DualProblem& prob, Vector lambda, const NewtonOptions& opts) {
  NewtonOutcome out;
  std::vector<Matrix> factors;
  if (!prob.factor(lambda, factors)) {
    throw Error(ErrorKind::InvalidArgument,
                "initial dual point is not in the interior of the dual cone");
  }
  const double cnorm = prob.c().cwiseAbs().maxCoeff();
  const double limit = opts.lambda_limit * std::max(1.0, cnorm > 0 ? 1.0 / cnorm : 1.0);
  const double gtol = opts.gradient_tol * (1.0 + std::abs(prob.c()[0]));

  double f = prob.objective(lambda, factors);
  out.trace.push_back(f);
  Vector grad;
  Matrix hess;
  double prev_decrement = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    prob.derivatives(factors, grad, hess);
    out.iterations = iter;
    if (grad.cwiseAbs().maxCoeff() <= gtol) {
      out.status = "converged";
      break;
    }
    const Vector step = newton_direction(hess, grad);
    const double slope = grad.dot(step);
    out.decrement = std::sqrt(std::max(0.0, -slope));
    if (out.decrement <= opts.decrement_tol) {
      out.status = "converged";
      break;
    }
    if (out.decrement < kRoundingFloor && out.decrement > 0.5 * prev_decrement) {
      // Quadratic convergence has stopped: rounding noise dominates.
      out.status = "converged (rounding floor)";
      break;
    }
    prev_decrement = out.decrement;
    if (iter == opts.max_iterations) {
      std::ostringstream os;
      os << "Newton did not converge in " << opts.max_iterations
         << " iterations (decrement " << out.decrement << ")";
      // A large remaining decrement means the iterates are still running
      // away: the dual is unbounded below.
      throw Error(out.decrement > 1e-3 ? ErrorKind::NotInInterior : ErrorKind::MaxIterations,
                  os.str());
    }
    std::vector<Matrix> trial_factors;
    bool accepted = false;
    if (out.decrement < kQuadraticRegion) {
      // Full steps stay feasible and converge quadratically for a
      // self-concordant barrier; an Armijo test here only sees rounding.
      const Vector trial = lambda + step;
      if (prob.factor(trial, trial_factors)) {
        lambda = trial;
        factors = std::move(trial_factors);
        f = prob.objective(lambda, factors);
        accepted = true;
      }
    }
    double s = 1.0;
    for (int k = 0; !accepted && k < opts.max_backtracks; ++k, s *= opts.backtrack) {
      const Vector trial = lambda + s * step;
      if (!prob.factor(trial, trial_factors)) continue;
      const double ft = prob.objective(trial, trial_factors);
      if (ft <= f + opts.armijo * s * slope) {
        lambda = trial;
        factors = std::move(trial_factors);
        f = ft;
        accepted = true;
      }
    }
    if (!accepted) {
      if (out.decrement < kRoundingFloor) {
        out.status = "converged (rounding floor)";
        break;
      }
      std::ostringstream os;
      os << "line search failed at iteration " << iter << " (decrement " << out.decrement << ")";
      throw Error(ErrorKind::MaxIterations, os.str());
    }
    out.trace.push_back(f);
    if (lambda.cwiseAbs().maxCoeff() > limit) {
      std::ostringstream os;
      os << "dual iterates diverge (|lambda| > " << limit << " at iteration " << iter + 1
         << "): polynomial is not in the interior of the cone";
      throw Error(ErrorKind::NotInInterior, os.str());
    }
  }
  out.lambda = std::move(lambda);
  out.factors = std::move(factors);
  return out;
}

/// lambda0_k = scale / (k + 1) for even k: moments of the uniform measure on [-1, 1].
Vector uniform_start(Eigen::Index m, double scale) {
  Vector l = Vector::Zero(m);
  for (Eigen::Index k = 0; k < m; k += 2) l[k] = scale / static_cast<double>(k + 1);
  return l;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

MaxDetResult maxdet_hankel(const UnivariateSos& p, const NewtonOptions& opts) {
  const auto& c = p.coeffs();
  const unsigned t = p.half_degree();
  for (double v : c) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
  }
  if (!(c.front() > 0.0) || !(c.back() > 0.0)) {
    throw Error(ErrorKind::NotInInterior,
                "polynomial is not an interior SOS (constant or leading coefficient <= 0)");
  }
  MaxDetResult res;
  if (t == 0) {
    res.gram = Matrix::Constant(1, 1, c[0]);
    res.hankel = Matrix::Constant(1, 1, 1.0 / c[0]);
    res.dual = {1.0 / c[0]};
    res.status = "converged";
    return res;
  }
  // Balance: with y = sigma z and p = kappa p~, p~ has unit constant and
  // leading coefficients. Q = kappa D^{-1} Q~ D^{-1} with D = diag(sigma^i)
  // maps max-det Grams to max-det Grams, since log det only shifts.
  const auto m = static_cast<Eigen::Index>(c.size());
  const double kappa = c.front();
  const double sigma = std::pow(c.front() / c.back(), 1.0 / static_cast<double>(2 * t));
  Vector cb(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    cb[k] = c[k] * std::pow(sigma, static_cast<double>(k)) / kappa;
  }
  DualProblem prob(cb, {Block{{1.0}, static_cast<Eigen::Index>(t + 1)}});
  NewtonOutcome sol = minimize_dual(prob, uniform_start(m, 1.0), opts);

  res.dual.resize(c.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    res.dual[k] = sol.lambda[k] * std::pow(sigma, static_cast<double>(k)) / kappa;
  }
  res.hankel = hankel_matrix(res.dual);
  const Matrix qb = inverse_from_cholesky(sol.factors.front());
  const auto size = static_cast<Eigen::Index>(t + 1);
  Matrix q(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      q(i, j) = kappa * 0.5 * (qb(i, j) + qb(j, i)) /
                std::pow(sigma, static_cast<double>(i + j));
    }
  }
  res.gram = std::move(q);
  const auto sums = antidiagonal_sums(res.gram);
  double gn = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) gn = std::max(gn, std::abs(c[k] - sums[k]));
  res.gradient_norm = gn;
  res.iterations = sol.iterations;
  res.decrement = sol.decrement;
  res.status = sol.status;
  res.objective_trace = std::move(sol.trace);
  return res;
}

WeightedMaxDetResult weighted_maxdet(const std::vector<double>& p, const WeightedCone& cone,
                                     const NewtonOptions& opts) {
  if (cone.generators.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cone needs at least one generator");
  }
  const unsigned t = cone.t;
  std::size_t pdeg = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] != 0.0) pdeg = k;
  }
  if (pdeg > 2 * t) {
    throw Error(ErrorKind::InvalidArgument, "polynomial degree exceeds 2t");
  }
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < cone.generators.size(); ++j) {
    const unsigned s = cone.half_degree(j);
    if (s > t) {
      throw Error(ErrorKind::InvalidArgument,
                  "t must be at least ceil(deg g_j / 2) for every generator");
    }
    std::vector<double> g = cone.generators[j];
    while (g.size() > 1 && g.back() == 0.0) g.pop_back();
    blocks.push_back(Block{std::move(g), static_cast<Eigen::Index>(t - s + 1)});
  }
  const auto m = static_cast<Eigen::Index>(2 * t + 1);
  Vector c = Vector::Zero(m);
  for (std::size_t k = 0; k < p.size() && k < static_cast<std::size_t>(m); ++k) c[k] = p[k];
  const double scale = c[0] > 0.0 ? c[0] : 1.0;
  DualProblem prob(c, blocks);
  NewtonOutcome sol = minimize_dual(prob, uniform_start(m, scale), opts);

  WeightedMaxDetResult res;
  res.dual = to_std(sol.lambda);
  std::vector<double> recon(m, 0.0);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    res.localizing.push_back(blocks[j].assemble(sol.lambda));
    Matrix q = inverse_from_cholesky(sol.factors[j]);
    q = 0.5 * (q + q.transpose());
    auto sigma = antidiagonal_sums(q);
    res.grams.push_back(std::move(q));
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      for (std::size_t b = 0; b < blocks[j].g.size(); ++b) recon[a + b] += sigma[a] * blocks[j].g[b];
    }
    res.multipliers.push_back(std::move(sigma));
  }
  double r = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) r = std::max(r, std::abs(recon[k] - c[k]));
  res.residual = r;
  res.gradient_norm = r;
  res.iterations = sol.iterations;
  res.decrement = sol.decrement;
  res.status = sol.status;
  res.objective_trace = std::move(sol.trace);
  return res;
}

}  // namespace christo
