#include "christo/moments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "christo/errors.hpp"
#include "christo/kernels.hpp"
#include "christo/quadrature.hpp"

namespace christo {

MomentSequence::MomentSequence(std::size_t dim, unsigned order)
    : dim_(dim), order_(order) {
  for (auto& g : graded_indices(dim, order)) values_.emplace(std::move(g), 0.0);
}

double MomentSequence::value(const MultiIndex& gamma) const {
  auto it = values_.find(gamma);
  if (it == values_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "moment " + gamma.to_string() + " beyond sequence order " +
                    std::to_string(order_));
  }
  return it->second;
}

void MomentSequence::set(const MultiIndex& gamma, double v) {
  auto it = values_.find(gamma);
  if (it == values_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "moment " + gamma.to_string() + " beyond sequence order");
  }
  it->second = v;
}

MomentSequence MomentSequence::scaled(double s) const {
  MomentSequence out = *this;
  for (auto& [g, v] : out.values_) v /= s;
  return out;
}

MomentSequence univariate_sequence(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "empty moment vector");
  MomentSequence seq(1, static_cast<unsigned>(values.size() - 1));
  for (std::size_t k = 0; k < values.size(); ++k) {
    seq.set(MultiIndex{static_cast<unsigned>(k)}, values[k]);
  }
  return seq;
}

std::vector<double> dense_values(const MomentSequence& seq) {
  if (seq.dim() != 1) throw Error(ErrorKind::InvalidArgument, "sequence is not univariate");
  std::vector<double> out(seq.order() + 1);
  for (unsigned k = 0; k <= seq.order(); ++k) out[k] = seq.value(MultiIndex{k});
  return out;
}

// ---- Profile ---------------------------------------------------------------

Profile Profile::polynomial(std::vector<double> coeffs) {
  Profile p;
  p.poly = std::move(coeffs);
  if (p.poly.empty()) p.poly.push_back(0.0);
  return p;
}

Profile Profile::table(std::vector<double> xs, std::vector<double> values) {
  if (xs.size() < 2 || xs.size() != values.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "tabulated profile needs >= 2 abscissae and matching values");
  }
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw Error(ErrorKind::InvalidArgument, "profile abscissae must be strictly ascending");
  }
  Profile p;
  p.table_x = std::move(xs);
  p.table_values = std::move(values);
  return p;
}

double Profile::operator()(double x) const {
  if (!is_table()) return horner(poly, x);
  // Clamp outside the table, linear inside.
  if (x <= table_x.front()) return table_values.front();
  if (x >= table_x.back()) return table_values.back();
  const auto it = std::upper_bound(table_x.begin(), table_x.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - table_x.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - table_x[lo]) / (table_x[hi] - table_x[lo]);
  return (1.0 - w) * table_values[lo] + w * table_values[hi];
}

std::size_t MeasureSpec::dim() const {
  struct {
    std::size_t operator()(const SamplesMeasure& s) const {
      return s.points.empty() ? 0 : s.points.front().size();
    }
    std::size_t operator()(const BoxMeasure& b) const { return b.bounds.size(); }
    std::size_t operator()(const CurveRegionMeasure&) const { return 2; }
  } visitor;
  return std::visit(visitor, shape);
}

// ---- generation --------------------------------------------------------------

MomentSequence moments_from_samples(const std::vector<std::vector<double>>& points,
                                    unsigned t) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "no sample points");
  const std::size_t d = points.front().size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "sample points have dimension 0");
  for (const auto& p : points) {
    if (p.size() != d) {
      throw Error(ErrorKind::InvalidArgument, "sample points differ in dimension");
    }
  }
  MomentSequence seq(d, 2 * t);
  std::vector<MultiIndex> idx;
  idx.reserve(seq.values().size());
  for (const auto& [g, v] : seq.values()) idx.push_back(g);
  const auto sums = power_sums_parallel(points, idx);
  const double n = static_cast<double>(points.size());
  for (std::size_t k = 0; k < idx.size(); ++k) seq.set(idx[k], sums[k] / n);
  // Exact mass regardless of rounding.
  seq.set(MultiIndex::zero(d), 1.0);
  return seq;
}

MomentSequence moments_uniform_box(const std::vector<std::array<double, 2>>& bounds,
                                   unsigned t, bool probability) {
  if (bounds.empty()) throw Error(ErrorKind::InvalidArgument, "box has no coordinates");
  const unsigned order = 2 * t;
  std::vector<std::vector<double>> factor(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto [a, b] = bounds[i];
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw Error(ErrorKind::InvalidArgument, "box bounds must be finite");
    }
    if (!(b > a)) {
      throw Error(ErrorKind::InvalidArgument, "degenerate box interval [" +
                                                  std::to_string(a) + ", " +
                                                  std::to_string(b) + "]");
    }
    factor[i].resize(order + 1);
    double pa = a, pb = b;  // a^{k+1}, b^{k+1}
    for (unsigned k = 0; k <= order; ++k) {
      const double integral = (pb - pa) / (k + 1);
      factor[i][k] = probability ? integral / (b - a) : integral;
      pa *= a;
      pb *= b;
    }
  }
  MomentSequence seq(bounds.size(), order);
  for (const auto& [g, v] : seq.values()) {
    double m = 1.0;
    for (std::size_t i = 0; i < g.dim(); ++i) m *= factor[i][g[i]];
    seq.set(g, m);
  }
  if (probability) seq.set(MultiIndex::zero(bounds.size()), 1.0);
  return seq;
}

MomentSequence moments_curve_region(const CurveRegionMeasure& region, unsigned t,
                                    unsigned quad_order, bool probability) {
  const auto [x0, x1] = region.x_interval;
  if (!std::isfinite(x0) || !std::isfinite(x1) || !(x1 > x0)) {
    throw Error(ErrorKind::InvalidArgument, "curve region needs a finite X-interval");
  }
  if (quad_order < t + 1) {
    throw Error(ErrorKind::InvalidArgument,
                "quadrature order must be at least t + 1");
  }
  const unsigned order = 2 * t;
  const AtomicMeasure rule = gauss_legendre(quad_order);
  const double half = 0.5 * (x1 - x0);
  const double mid = 0.5 * (x1 + x0);

  MomentSequence seq(2, order);
  std::map<MultiIndex, double> acc;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = mid + half * rule.nodes[q];
    const double a = region.lower(x);
    const double b = region.upper(x);
    if (!(b - a > 0.0)) {
      throw Error(ErrorKind::InvalidRegion,
                  "curve region has b(x) <= a(x) at x = " + std::to_string(x));
    }
    double w = rule.weights[q] * half;
    if (region.x_weight) {
      const double dens = (*region.x_weight)(x);
      if (dens < 0.0) {
        throw Error(ErrorKind::InvalidRegion,
                    "x-density is negative at x = " + std::to_string(x));
      }
      w *= dens;
    }
    // fibre[j] = (b^{j+1} - a^{j+1}) / (j + 1)
    std::vector<double> fibre(order + 1);
    double pa = a, pb = b;
    for (unsigned j = 0; j <= order; ++j) {
      fibre[j] = (pb - pa) / (j + 1);
      pa *= a;
      pb *= b;
    }
    std::vector<double> xp(order + 1, 1.0);
    for (unsigned k = 1; k <= order; ++k) xp[k] = xp[k - 1] * x;
    for (const auto& [g, v] : seq.values()) acc[g] += w * xp[g[0]] * fibre[g[1]];
  }
  for (const auto& [g, v] : acc) seq.set(g, v);
  if (probability) {
    const double mass = seq.mass();
    seq = seq.scaled(mass);
    seq.set(MultiIndex::zero(2), 1.0);
  }
  return seq;
}

MomentSequence moments_of(const MeasureSpec& spec, unsigned t, unsigned quad_order) {
  struct {
    unsigned t;
    unsigned quad_order;
    bool probability;
    MomentSequence operator()(const SamplesMeasure& s) const {
      return moments_from_samples(s.points, t);
    }
    MomentSequence operator()(const BoxMeasure& b) const {
      return moments_uniform_box(b.bounds, t, probability);
    }
    MomentSequence operator()(const CurveRegionMeasure& c) const {
      return moments_curve_region(c, t, quad_order, probability);
    }
  } visitor{t, quad_order, spec.probability};
  return std::visit(visitor, spec.shape);
}

// ---- functionals ---------------------------------------------------------------

double riesz_eval(const MomentSequence& seq, const Polynomial& poly) {
  if (poly.dim() != seq.dim()) {
    throw Error(ErrorKind::InvalidArgument, "polynomial/sequence dimension mismatch");
  }
  if (poly.degree() > seq.order()) {
    throw Error(ErrorKind::InvalidArgument,
                "polynomial degree " + std::to_string(poly.degree()) +
                    " exceeds moment order " + std::to_string(seq.order()));
  }
  double s = 0.0;
  for (const auto& [m, c] : poly.terms()) s += c * seq.value(m);
  return s;
}

MomentSequence localize_sequence(const MomentSequence& seq, const Polynomial& g) {
  if (g.dim() != seq.dim()) {
    throw Error(ErrorKind::InvalidArgument, "localizer dimension mismatch");
  }
  const unsigned dg = g.degree();
  const unsigned s = (dg + 1) / 2;
  const unsigned t = seq.half_degree();
  if (s > t) {
    throw Error(ErrorKind::InvalidArgument,
                "localizer degree " + std::to_string(dg) +
                    " too large for sequence order " + std::to_string(seq.order()));
  }
  MomentSequence out(seq.dim(), seq.order() - dg);
  for (const auto& [alpha, v] : out.values()) {
    double acc = 0.0;
    for (const auto& [beta, c] : g.terms()) acc += c * seq.value(alpha + beta);
    out.set(alpha, acc);
  }
  return out;
}

MomentSequence marginal_sequence(const MomentSequence& seq, std::size_t n) {
  if (n == 0 || n > seq.dim()) {
    throw Error(ErrorKind::InvalidArgument, "marginal needs 1 <= n <= dim");
  }
  MomentSequence out(n, seq.order());
  const MultiIndex zero_tail = MultiIndex::zero(seq.dim() - n);
  for (const auto& [alpha, v] : out.values()) {
    out.set(alpha, seq.value(alpha.concat(zero_tail)));
  }
  return out;
}

// ---- moment matrix ------------------------------------------------------------------

MomentMatrix::MomentMatrix(OrderedBasis basis, Matrix entries, double jitter)
    : basis_(std::move(basis)),
      entries_(std::move(entries)),
      factor_(cholesky_lower(entries_)),
      condition_(factor_ ? condition_spd(entries_)
                         : std::numeric_limits<double>::infinity()),
      jitter_(jitter) {}

MomentMatrix moment_matrix(const MomentSequence& seq, const OrderedBasis& basis,
                           double jitter) {
  if (basis.dim() != seq.dim()) {
    throw Error(ErrorKind::InvalidArgument, "basis/sequence dimension mismatch");
  }
  if (2 * basis.degree() > seq.order()) {
    throw Error(ErrorKind::InvalidArgument,
                "moment matrix of degree " + std::to_string(basis.degree()) +
                    " needs moments up to " + std::to_string(2 * basis.degree()));
  }
  const auto s = static_cast<Eigen::Index>(basis.size());
  Matrix m(s, s);
  for (Eigen::Index r = 0; r < s; ++r) {
    for (Eigen::Index c = r; c < s; ++c) {
      const double v = seq.value(basis.at(r) + basis.at(c));
      m(r, c) = v;
      m(c, r) = v;
    }
  }
  if (jitter != 0.0) m.diagonal().array() += jitter;
  return MomentMatrix(basis, std::move(m), jitter);
}

// ---- samples I/O -----------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SampleTable read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string());
  SampleTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::InvalidArgument, path.string() + ": missing header row");
  }
  table.columns = split_csv_line(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != table.columns.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  path.string() + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(table.columns.size()) + " fields");
    }
    std::vector<double> p;
    p.reserve(fields.size());
    for (const auto& f : fields) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != f.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    path.string() + ":" + std::to_string(lineno) +
                        ": not a number: '" + f + "'");
      }
      p.push_back(v);
    }
    table.points.push_back(std::move(p));
  }
  return table;
}

AffineRescale AffineRescale::fit(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "no points to rescale");
  const std::size_t d = points.front().size();
  AffineRescale r;
  r.center.resize(d);
  r.half_width.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    double lo = points.front()[i], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    r.center[i] = 0.5 * (lo + hi);
    r.half_width[i] = hi > lo ? 0.5 * (hi - lo) : 1.0;
  }
  return r;
}

std::vector<double> AffineRescale::apply(const std::vector<double>& point) const {
  if (point.size() != center.size()) {
    throw Error(ErrorKind::InvalidArgument, "point dimension mismatch in rescale");
  }
  std::vector<double> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    out[i] = (point[i] - center[i]) / half_width[i];
  }
  return out;
}

std::vector<std::vector<double>> AffineRescale::apply(
    const std::vector<std::vector<double>>& points) const {
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(apply(p));
  return out;
}

}  // namespace christo
