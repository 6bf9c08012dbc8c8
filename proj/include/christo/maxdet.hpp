#ifndef CHRISTO_MAXDET_HPP
#define CHRISTO_MAXDET_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "christo/linalg.hpp"

namespace christo {

/// Univariate polynomial c0 + c1 y + ... + c_{2t} y^{2t}. Odd-length input
/// is kept; even-length input gets a zero leading coefficient appended so
/// that the degree bound is always even.
class UnivariateSos {
 public:
  explicit UnivariateSos(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Half degree t (degree bound is 2t).
  unsigned half_degree() const { return static_cast<unsigned>(coeffs_.size() / 2); }
  double operator()(double y) const;

 private:
  std::vector<double> coeffs_;
};

struct NewtonOptions {
  int max_iterations = 100;
  /// Divergence bound on |lambda|_inf, multiplied by max(1, 1/|c|_inf).
  double lambda_limit = 1e8;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
  /// Stop once |grad|_inf <= gradient_tol * (1 + |c0|) ...
  double gradient_tol = 1e-10;
  /// ... or the Newton decrement falls to this value.
  double decrement_tol = 1e-12;
};

struct MaxDetResult {
  Matrix gram;                 // Q* of size t+1
  Matrix hankel;               // H(lambda*) = (Q*)^{-1}
  std::vector<double> dual;    // lambda*, length 2t+1
  int iterations = 0;
  double gradient_norm = 0.0;  // |c - antidiag sums of Q*|_inf
  double decrement = 0.0;      // final Newton decrement
  std::string status;
  std::vector<double> objective_trace;  // dual objective at each accepted iterate
};

/// Max-det Gram matrix of p: maximizes log det Q over PD Q with
/// v_t(y)^T Q v_t(y) = p(y), via damped Newton on the dual
///   min_lambda c^T lambda - log det H(lambda),  H(lambda)_{rc} = lambda_{r+c}.
/// Throws NotInInterior when p is not an interior SOS (iterates diverge),
/// MaxIterations when the iteration budget runs out.
MaxDetResult maxdet_hankel(const UnivariateSos& p, const NewtonOptions& opts = {});

/// Generators g_0..g_m of the quadratic module K_t = { sum_j sigma_j g_j }.
struct WeightedCone {
  std::vector<std::vector<double>> generators;  // dense univariate coefficients
  unsigned t = 1;

  /// ceil(deg g_j / 2).
  unsigned half_degree(std::size_t j) const;
};

struct WeightedMaxDetResult {
  std::vector<double> dual;              // lambda*, length 2t+1
  std::vector<Matrix> localizing;        // M_{t-s_j}(g_j . lambda*)
  std::vector<Matrix> grams;             // inverses of the above
  std::vector<std::vector<double>> multipliers;  // sigma_j coefficients
  double residual = 0.0;                 // |sum_j sigma_j g_j - p|_inf
  int iterations = 0;
  double gradient_norm = 0.0;
  double decrement = 0.0;
  std::string status;
  std::vector<double> objective_trace;
};

/// min_lambda c^T lambda - sum_j log det M_{t-s_j}(g_j . lambda); the optimal
/// Gram matrices give p = sum_j sigma_j g_j with sigma_j = v^T M_j^{-1} v.
WeightedMaxDetResult weighted_maxdet(const std::vector<double>& p, const WeightedCone& cone,
                                     const NewtonOptions& opts = {});

/// Anti-diagonal sums of a square matrix: out[k] = sum_{i+j=k} a(i, j).
std::vector<double> antidiagonal_sums(const Matrix& a);

/// Hankel matrix H(lambda) of size (len+1)/2.
Matrix hankel_matrix(const std::vector<double>& lambda);

}  // namespace christo

#endif  // CHRISTO_MAXDET_HPP
