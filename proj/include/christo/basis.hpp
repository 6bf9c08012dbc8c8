#ifndef CHRISTO_BASIS_HPP
#define CHRISTO_BASIS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace christo {

/// Default ceiling on the degree bound t accepted by basis construction.
inline constexpr unsigned kMaxDegree = 12;

/// Exponent vector of a monomial, one entry per variable.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents)
      : exponents_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents)
      : exponents_(exponents) {}

  static MultiIndex zero(std::size_t dim) {
    return MultiIndex(std::vector<unsigned>(dim, 0));
  }

  std::size_t dim() const { return exponents_.size(); }
  unsigned degree() const;
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned& operator[](std::size_t i) { return exponents_[i]; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Concatenation (x-part followed by y-part).
  MultiIndex concat(const MultiIndex& tail) const;
  MultiIndex head(std::size_t n) const;
  MultiIndex tail(std::size_t from) const;

  /// Evaluates prod_i point[i]^exponent[i]; point.size() must equal dim().
  double evaluate(std::span<const double> point) const;

  /// Lexicographic on the raw exponent vector; used for map keys only.
  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  std::string to_string() const;

 private:
  std::vector<unsigned> exponents_;
};

/// Graded-lexicographic comparison: lower total degree first, then
/// earlier variables carrying larger exponents first (1, x1, x2, x1^2, ...).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices in `dim` variables of total degree <= t, graded-lex.
std::vector<MultiIndex> graded_indices(std::size_t dim, unsigned t);

/// binomial(n + t, n), the number of monomials of degree <= t in n variables.
std::size_t basis_size(std::size_t n, unsigned t);

/// Monomial basis of R[x, y]_t with x in R^n and y in R^p, listed in
/// blocks of increasing |beta| (the y-degree). Inside a block the order is
/// graded-lex on beta, then graded-lex on alpha. With p = 0 this is the
/// plain graded-lex basis of R[x]_t.
class OrderedBasis {
 public:
  OrderedBasis(std::size_t n, std::size_t p, unsigned t);

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  std::size_t dim() const { return n_ + p_; }
  unsigned degree() const { return t_; }
  std::size_t size() const { return pairs_.size(); }

  /// Joint multi-index (alpha, beta) at rank r.
  const MultiIndex& at(std::size_t r) const { return pairs_[r]; }
  const std::vector<MultiIndex>& indices() const { return pairs_; }

  /// y-degree |beta| of the entry at rank r.
  unsigned y_degree(std::size_t r) const;

  /// Rank of a joint multi-index; throws InvalidArgument if absent.
  std::size_t position(const MultiIndex& joint) const;
  bool contains(const MultiIndex& joint) const;

  /// v_t(point): monomials evaluated at a point of length n + p.
  std::vector<double> monomial_vector(std::span<const double> point) const;

  /// Human-readable monomial names ("1", "x", "x^2", "y", "x*y", ...).
  std::vector<std::string> labels() const;

 private:
  std::size_t n_;
  std::size_t p_;
  unsigned t_;
  std::vector<MultiIndex> pairs_;
  std::map<MultiIndex, std::size_t> rank_;
};

/// Convenience for enumerate(n, p, t).
inline OrderedBasis enumerate(std::size_t n, std::size_t p, unsigned t) {
  return OrderedBasis(n, p, t);
}

std::string monomial_label(const MultiIndex& index, std::size_t n);

}  // namespace christo

#endif  // CHRISTO_BASIS_HPP
