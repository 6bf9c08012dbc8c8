#include "doctest.h"

#include <cmath>

#include "christo/disintegration.hpp"
#include "support.hpp"

using namespace christo;
using testing::error_kind;

namespace {

JointModel model_of(const MeasureSpec& spec, unsigned t, std::size_t n = 1) {
  return build_joint(spec, n, t);
}

std::vector<double> grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

double joint_cf(const JointModel& m, double x, double y) {
  const std::vector<double> p{x, y};
  return m.joint.value(p);
}

}  // namespace

TEST_CASE("conditional SOS closed forms on the square") {
  const auto m = model_of(testing::square(), 1);
  const std::vector<double> x0{0.0}, x1{1.0};
  const auto a = conditional_sos(m, x0).univariate();
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(a[1]) <= 1e-14);
  CHECK(a[2] == doctest::Approx(3.0).epsilon(1e-14));
  const auto b = conditional_sos(m, x1).univariate();
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(b[1]) <= 1e-14);
  CHECK(b[2] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("conditional SOS rearranges the joint CF") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (unsigned t = 1; t <= 5; ++t) {
    const auto m = model_of(testing::curved(), t);
    for (int i = 0; i < 10; ++i) {
      const std::vector<double> x{u(rng)};
      const auto sos = conditional_sos(m, x);
      CHECK(sos.univariate()[0] >= 1.0 - 1e-12);
      for (int j = 0; j < 10; ++j) {
        const double y = u(rng);
        const std::vector<double> yy{y};
        const double lhs = sos.evaluate(yy) * joint_cf(m, x[0], y);
        CHECK(std::abs(lhs - sos.marginal_cf) <= 1e-10 * sos.marginal_cf);
        CHECK(sos.evaluate(yy) - 1.0 >= -1e-9);
        const std::vector<double> xy{x[0], y};
        CHECK(1.0 / m.joint.value(xy) - 1.0 / m.marginal.value(x) >= -1e-9);
      }
    }
  }
}

TEST_CASE("disintegration of the square at x = 0") {
  const auto m = model_of(testing::square(), 1);
  const std::vector<double> x{0.0};
  const auto r = disintegrate_at(m, x);
  CHECK(std::abs(r.hankel()(0, 0) - 1.0) <= 1e-10);
  CHECK(std::abs(r.hankel()(0, 1)) <= 1e-10);
  CHECK(std::abs(r.hankel()(1, 1) - 1.0 / 3.0) <= 1e-10);
  REQUIRE(r.measure.nodes.size() == 2);
  CHECK(std::abs(r.measure.nodes[0] + 1.0 / std::sqrt(3.0)) <= 1e-10);
  CHECK(std::abs(r.measure.nodes[1] - 1.0 / std::sqrt(3.0)) <= 1e-10);
  CHECK(std::abs(r.measure.weights[0] - 0.5) <= 1e-10);
  CHECK(std::abs(r.mass - 1.0) <= 1e-10);
  CHECK_FALSE(r.diagnostics.extreme_conditioning);
}

TEST_CASE("disintegration invariants at x = 1") {
  const auto m = model_of(testing::square(), 1);
  const std::vector<double> x{1.0};
  const auto r = disintegrate_at(m, x);
  CHECK(r.sos[2] == doctest::Approx(0.75));
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(r.hankel()).eigenvalues().minCoeff() > 0.0);
  const auto ys = grid(-2.0, 2.0, 101);
  CHECK(factorization_residual(m, r, ys) <= 1e-8);
  const auto back = atoms_moments(r.measure, 2);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(back[k] - r.maxdet.dual[k]) <= 1e-8 * std::max(1.0, std::abs(r.maxdet.dual[k])));
  }
}

TEST_CASE("far outside the support the result is flagged, not refused") {
  const auto m = model_of(testing::square(), 3);
  const std::vector<double> x{1e3};
  const auto r = disintegrate_at(m, x);
  CHECK(r.marginal_cf < kExtremeMarginalCf);
  CHECK(r.diagnostics.extreme_conditioning);
  CHECK(r.mass > 0.0);
}

TEST_CASE("factorization residuals") {
  const auto ys = grid(-2.0, 2.0, 101);
  for (unsigned t = 1; t <= 3; ++t) {
    const auto m = model_of(testing::square(), t);
    const std::vector<double> x{0.0};
    CHECK(factorization_residual(m, x, ys) <= 1e-8);
  }
  const auto ycurve = grid(-1.5, 1.5, 101);
  for (unsigned t = 2; t <= 5; ++t) {
    const auto m = model_of(testing::curved(), t);
    for (double xv : {-0.5, 0.0, 0.5}) {
      const std::vector<double> x{xv};
      CHECK(factorization_residual(m, x, ycurve) <= 1e-8);
    }
  }
  const auto m = model_of(testing::square(), 2);
  const std::vector<double> x{0.0};
  CHECK(factorization_residual(m, x, std::vector<double>{}) == 0.0);
}

TEST_CASE("conditional moment matrices are Hankel PD and reproduced by their atoms") {
  for (unsigned t = 1; t <= 5; ++t) {
    const auto m = model_of(testing::curved(), t);
    for (double xv : {-0.7, 0.2, 0.9}) {
      const std::vector<double> x{xv};
      const auto r = disintegrate_at(m, x);
      const Matrix& h = r.hankel();
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().minCoeff() > 0.0);
      const auto back = atoms_moments(r.measure, 2 * t);
      for (std::size_t k = 0; k <= 2 * t; ++k) {
        CHECK(std::abs(back[k] - r.maxdet.dual[k]) <=
              1e-8 * std::max(1.0, std::abs(r.maxdet.dual[k])));
      }
      CHECK(r.mass == r.maxdet.dual[0]);
    }
  }
}

TEST_CASE("several y variables: coefficients only") {
  const auto spec = testing::box_spec({{-1.0, 1.0}, {-1.0, 1.0}, {0.0, 1.0}});
  const auto m = model_of(spec, 2);
  CHECK(m.p() == 2);
  const std::vector<double> x{0.3};
  const auto sos = conditional_sos(m, x);
  CHECK(sos.p == 2);
  for (double y1 : {-1.0, 0.0, 0.4}) {
    for (double y2 : {0.0, 0.5, 1.5}) {
      const std::vector<double> y{y1, y2};
      const std::vector<double> xy{0.3, y1, y2};
      CHECK(sos.evaluate(y) * m.joint.value(xy) == doctest::Approx(sos.marginal_cf).epsilon(1e-10));
    }
  }
  CHECK(error_kind([&] { (void)disintegrate_at(m, x); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([&] { (void)sos.univariate(); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("two conditioning variables") {
  const auto spec = testing::box_spec({{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}});
  const auto m = model_of(spec, 2, 2);
  const std::vector<double> x{0.1, -0.4};
  const auto r = disintegrate_at(m, x);
  CHECK(factorization_residual(m, r, grid(-1.5, 1.5, 31)) <= 1e-8);
  CHECK(error_kind([&] { (void)conditional_sos(m, std::vector<double>{0.1}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("decay outside the support") {
  const std::vector<double> x{0.0};
  const auto table = decay_sweep(testing::square(), x, 1.5, {2, 3, 4, 5, 6, 7, 8});
  REQUIRE(table.rows.size() == 7);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].value < table.rows[i - 1].value);
  }
  REQUIRE(table.slope);
  CHECK(*table.slope < 0.0);
  CHECK(*table.r_squared >= 0.95);

  const auto one = decay_sweep(testing::square(), x, 1.5, {3});
  CHECK(one.rows.size() == 1);
  CHECK_FALSE(one.slope);
  CHECK(error_kind([&] { (void)decay_sweep(testing::square(), x, 1.5, {3, 2}); }) ==
        ErrorKind::InvalidArgument);
  // inside the support nothing is asserted beyond completion
  CHECK(decay_sweep(testing::square(), x, 0.0, {2, 3, 4}).rows.size() == 3);
}

TEST_CASE("asymptotic sweep") {
  const std::vector<double> x{0.0};
  const auto table = asymptotic_sweep(testing::square(), x, 0.0, {2, 3, 4, 5, 6, 7, 8});
  for (const auto& row : table.rows) {
    CHECK(row.value > 0.5);
    CHECK(row.value < 3.0);
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(std::abs(table.rows[i].value / table.rows[i - 1].value - 1.0) < 0.5);
  }
  CHECK(asymptotic_sweep(testing::square(), x, 0.0, {}).rows.empty());
  const auto uni = asymptotic_sweep(testing::segment(), x, 0.0, {10, 40});
  CHECK(uni.rows.size() == 2);
}

TEST_CASE("univariate CF through the recurrence at high degree") {
  const auto rc = univariate_cf(testing::segment(), 100);
  // t * Lambda_t(0) tends to pi/2 for the uniform probability measure
  CHECK(std::abs(100.0 * rc.value(0.0) / (M_PI / 2.0) - 1.0) < 0.05);
  CHECK(error_kind([] { (void)univariate_cf(testing::square(), 3); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("conjecture probe") {
  const std::vector<double> x{0.0};
  const auto a = conjecture_probe(testing::square(), x, {1, 2});
  REQUIRE(a.entries.size() == 2);
  CHECK(std::abs(a.entries[0].moments[0] - 1.0) <= 1e-10);
  CHECK(std::abs(a.entries[0].moments[1]) <= 1e-10);
  CHECK(std::abs(a.entries[0].moments[2] - 1.0 / 3.0) <= 1e-10);
  REQUIRE(a.distances.size() == 1);
  CHECK(a.distances[0].t == 1);
  CHECK(a.distances[0].t_next == 2);
  const auto b = conjecture_probe(testing::square(), x, {1, 2});
  CHECK(a.distances[0].max_abs_difference == b.distances[0].max_abs_difference);
  CHECK(a.entries[1].moments == b.entries[1].moments);
  CHECK(error_kind([&] { (void)conjecture_probe(testing::square(), x, {2}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("line fit") {
  const std::vector<double> xs{1, 2, 3, 4};
  const std::vector<double> ys{3, 5, 7, 9};
  const auto [slope, r2] = fit_line(xs, ys);
  CHECK(slope == doctest::Approx(2.0));
  CHECK(r2 == doctest::Approx(1.0));
}

TEST_CASE("bit-identical reruns") {
  const auto m1 = model_of(testing::curved(), 4);
  const auto m2 = model_of(testing::curved(), 4);
  const std::vector<double> x{0.25};
  const auto r1 = disintegrate_at(m1, x);
  const auto r2 = disintegrate_at(m2, x);
  CHECK(r1.sos == r2.sos);
  CHECK(r1.maxdet.dual == r2.maxdet.dual);
  CHECK(r1.measure.nodes == r2.measure.nodes);
}
