#ifndef CHRISTO_QUADRATURE_HPP
#define CHRISTO_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace christo {

/// Finitely supported measure sum_i weights[i] * delta(nodes[i]) on R.
struct AtomicMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;

  double mass() const;
};

/// Three-term recurrence of the orthonormal polynomials of a measure:
///   b[k+1] p_{k+1}(x) = (x - a[k]) p_k(x) - b[k] p_{k-1}(x),  p_0 = 1/sqrt(mass).
/// a has length n, b has length n with b[0] unused (0).
struct Recurrence {
  std::vector<double> a;
  std::vector<double> b;
  double mass = 1.0;

  std::size_t size() const { return a.size(); }
};

/// Gauss-Legendre rule on [-1, 1] (total mass 2), nodes ascending.
AtomicMeasure gauss_legendre(unsigned order);

/// Gauss rule from the first n recurrence coefficients (Golub-Welsch):
/// eigenvalues of the Jacobi matrix, weights mass * (first eigvec comp)^2.
AtomicMeasure gauss_from_recurrence(const Recurrence& rec);

/// Atomic measure with t+1 atoms whose moments 0..2t equal lambda
/// (length 2t+1, Hankel matrix positive definite). The one free moment
/// beyond the data is fixed by standardizing to mean 0, variance 1 and
/// setting the next odd moment to 0.
AtomicMeasure hankel_to_atoms(const std::vector<double>& lambda);

/// sum_i w_i * node_i^k for k = 0..up_to.
std::vector<double> atoms_moments(const AtomicMeasure& measure, unsigned up_to);

/// First n recurrence coefficients of an atomic measure by the discretized
/// Stieltjes procedure. Requires at least n distinct nodes.
Recurrence stieltjes(const AtomicMeasure& measure, std::size_t n);

}  // namespace christo

#endif  // CHRISTO_QUADRATURE_HPP
