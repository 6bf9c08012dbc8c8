#include "christo/polynomial.hpp"

#include "christo/errors.hpp"

namespace christo {

Polynomial Polynomial::univariate(std::span<const double> coeffs) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0.0) p.add_term(MultiIndex{static_cast<unsigned>(k)}, coeffs[k]);
  }
  return p;
}

Polynomial Polynomial::constant(std::size_t dim, double c) {
  Polynomial p(dim);
  p.add_term(MultiIndex::zero(dim), c);
  return p;
}

double Polynomial::coeff(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& m, double c) {
  if (m.dim() != dim_) {
    throw Error(ErrorKind::InvalidArgument, "term dimension mismatch");
  }
  double& slot = terms_[m];
  slot += c;
  if (slot == 0.0) terms_.erase(m);
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Polynomial::is_zero() const { return terms_.empty(); }

double Polynomial::evaluate(std::span<const double> point) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += c * m.evaluate(point);
  return s;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.dim_ != dim_) {
    throw Error(ErrorKind::InvalidArgument, "polynomial dimension mismatch");
  }
  Polynomial out(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) out.add_term(a + b, ca * cb);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other.scaled(-1.0);
}

Polynomial Polynomial::scaled(double s) const {
  Polynomial out(dim_);
  for (const auto& [m, c] : terms_) out.add_term(m, s * c);
  return out;
}

std::vector<double> Polynomial::dense() const {
  if (dim_ != 1) {
    throw Error(ErrorKind::InvalidArgument, "dense() needs a univariate polynomial");
  }
  std::vector<double> c(degree() + 1, 0.0);
  for (const auto& [m, v] : terms_) c[m[0]] = v;
  return c;
}

double horner(std::span<const double> coeffs, double x) {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * x + coeffs[k];
  return s;
}

}  // namespace christo
