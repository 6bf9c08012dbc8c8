#include "christo/basis.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "christo/errors.hpp"

namespace christo {

unsigned MultiIndex::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::InvalidArgument, "multi-index dimension mismatch");
  }
  MultiIndex out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.exponents_[i] += other[i];
  return out;
}

MultiIndex MultiIndex::concat(const MultiIndex& tail) const {
  std::vector<unsigned> e = exponents_;
  e.insert(e.end(), tail.exponents_.begin(), tail.exponents_.end());
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::head(std::size_t n) const {
  return MultiIndex(std::vector<unsigned>(exponents_.begin(),
                                          exponents_.begin() + n));
}

MultiIndex MultiIndex::tail(std::size_t from) const {
  return MultiIndex(
      std::vector<unsigned>(exponents_.begin() + from, exponents_.end()));
}

double MultiIndex::evaluate(std::span<const double> point) const {
  if (point.size() != dim()) {
    throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (unsigned k = 0; k < exponents_[i]; ++k) v *= point[i];
  }
  return v;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ')';
  return os.str();
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  // Same degree: the larger exponent on the earliest differing variable wins.
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

void fill_degree(std::size_t dim, unsigned remaining, std::size_t var,
                 std::vector<unsigned>& cur, std::vector<MultiIndex>& out) {
  if (var + 1 == dim) {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[var] = e;
    fill_degree(dim, remaining - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<MultiIndex> graded_indices(std::size_t dim, unsigned t) {
  std::vector<MultiIndex> out;
  if (dim == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> cur(dim, 0);
  for (unsigned d = 0; d <= t; ++d) fill_degree(dim, d, 0, cur, out);
  return out;
}

std::size_t basis_size(std::size_t n, unsigned t) {
  // binomial(n + t, t) accumulated as C(n+k, k) = C(n+k-1, k-1) * (n+k) / k,
  // which stays integral at every step.
  unsigned __int128 c = 1;
  for (unsigned k = 1; k <= t; ++k) {
    c = c * (n + k) / k;
    if (c > std::numeric_limits<std::size_t>::max()) {
      throw Error(ErrorKind::SizeOverflow,
                  "basis size overflows for n=" + std::to_string(n) +
                      ", t=" + std::to_string(t));
    }
  }
  return static_cast<std::size_t>(c);
}

OrderedBasis::OrderedBasis(std::size_t n, std::size_t p, unsigned t)
    : n_(n), p_(p), t_(t) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "basis needs n >= 1");
  if (t > kMaxDegree) {
    throw Error(ErrorKind::InvalidArgument,
                "degree " + std::to_string(t) + " exceeds the maximum " +
                    std::to_string(kMaxDegree));
  }
  const auto ys = graded_indices(p, t);  // already grouped by |beta|
  for (const auto& beta : ys) {
    for (const auto& alpha : graded_indices(n, t - beta.degree())) {
      pairs_.push_back(alpha.concat(beta));
    }
  }
  for (std::size_t r = 0; r < pairs_.size(); ++r) rank_.emplace(pairs_[r], r);
}

unsigned OrderedBasis::y_degree(std::size_t r) const {
  unsigned d = 0;
  for (std::size_t i = n_; i < dim(); ++i) d += pairs_[r][i];
  return d;
}

std::size_t OrderedBasis::position(const MultiIndex& joint) const {
  auto it = rank_.find(joint);
  if (it == rank_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "multi-index " + joint.to_string() + " not in basis");
  }
  return it->second;
}

bool OrderedBasis::contains(const MultiIndex& joint) const {
  return rank_.count(joint) != 0;
}

std::vector<double> OrderedBasis::monomial_vector(
    std::span<const double> point) const {
  if (point.size() != dim()) {
    throw Error(ErrorKind::InvalidArgument,
                "point has dimension " + std::to_string(point.size()) +
                    ", basis expects " + std::to_string(dim()));
  }
  // Power table, then one product per monomial.
  std::vector<std::vector<double>> pw(dim(), std::vector<double>(t_ + 1, 1.0));
  for (std::size_t i = 0; i < dim(); ++i) {
    for (unsigned k = 1; k <= t_; ++k) pw[i][k] = pw[i][k - 1] * point[i];
  }
  std::vector<double> v(size());
  for (std::size_t r = 0; r < size(); ++r) {
    double m = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) m *= pw[i][pairs_[r][i]];
    v[r] = m;
  }
  return v;
}

std::string monomial_label(const MultiIndex& index, std::size_t n) {
  const std::size_t dim = index.dim();
  auto name = [&](std::size_t i) -> std::string {
    if (dim == 1) return "x";
    if (dim == 2 && n == 1) return i == 0 ? "x" : "y";
    if (i < n) return n == 1 ? "x" : "x" + std::to_string(i + 1);
    return dim - n == 1 ? "y" : "y" + std::to_string(i - n + 1);
  };
  std::string out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (index[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += name(i);
    if (index[i] > 1) out += '^' + std::to_string(index[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::string> OrderedBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& m : pairs_) out.push_back(monomial_label(m, n_));
  return out;
}

}  // namespace christo
