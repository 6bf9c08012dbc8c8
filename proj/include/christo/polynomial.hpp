#ifndef CHRISTO_POLYNOMIAL_HPP
#define CHRISTO_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "christo/basis.hpp"

namespace christo {

/// Sparse multivariate polynomial: coefficient per exponent vector.
class Polynomial {
 public:
  explicit Polynomial(std::size_t dim = 1) : dim_(dim) {}

  /// Univariate polynomial from dense coefficients c0 + c1 x + ...
  static Polynomial univariate(std::span<const double> coeffs);
  static Polynomial constant(std::size_t dim, double c);

  std::size_t dim() const { return dim_; }
  const std::map<MultiIndex, double>& terms() const { return terms_; }

  double coeff(const MultiIndex& m) const;
  void add_term(const MultiIndex& m, double c);

  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const;
  bool is_zero() const;

  double evaluate(std::span<const double> point) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial scaled(double s) const;

  /// Dense univariate coefficients (dim must be 1), length degree()+1.
  std::vector<double> dense() const;

 private:
  std::size_t dim_;
  std::map<MultiIndex, double> terms_;
};

/// Horner evaluation of c0 + c1 x + ... + ck x^k.
double horner(std::span<const double> coeffs, double x);

}  // namespace christo

#endif  // CHRISTO_POLYNOMIAL_HPP
