#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "christo/quadrature.hpp"
#include "support.hpp"

using namespace christo;
using testing::error_kind;

namespace {

AtomicMeasure random_atoms(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> gap(0.2, 1.0), w(0.1, 1.0), shift(-2.0, 2.0);
  AtomicMeasure m;
  double x = shift(rng);
  for (std::size_t i = 0; i < k; ++i) {
    m.nodes.push_back(x);
    m.weights.push_back(w(rng));
    x += gap(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("low-order Gauss-Legendre rules") {
  const auto one = gauss_legendre(1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(std::abs(one.nodes[0]) <= 1e-15);
  CHECK(one.weights[0] == doctest::Approx(2.0));
  const auto two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(error_kind([] { (void)gauss_legendre(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Gauss-Legendre exactness up to degree 2k-1") {
  for (unsigned order : {3u, 5u, 8u, 20u, 64u}) {
    const auto g = gauss_legendre(order);
    CHECK(g.mass() == doctest::Approx(2.0).epsilon(1e-13));
    for (unsigned k = 0; k < 2 * order; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
      const double exact = (1.0 - std::pow(-1.0, k + 1)) / (k + 1);
      CHECK(std::abs(s - exact) <= 1e-12);
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      CHECK(g.nodes[i] > -1.0);
      CHECK(g.nodes[i] < 1.0);
      CHECK(g.nodes[i] == -g.nodes[g.nodes.size() - 1 - i]);
      if (i) CHECK(g.nodes[i - 1] < g.nodes[i]);
    }
  }
}

TEST_CASE("atoms from Hankel vectors") {
  const auto a = hankel_to_atoms({1.0, 0.0, 1.0 / 3.0});
  REQUIRE(a.nodes.size() == 2);
  CHECK(a.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(a.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(a.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.weights[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto b = hankel_to_atoms({1.0, 0.0, 1.0});
  CHECK(b.nodes[0] == doctest::Approx(-1.0));
  CHECK(b.nodes[1] == doctest::Approx(1.0));
  CHECK(b.weights[0] == doctest::Approx(0.5));

  const auto c = hankel_to_atoms({1.0});
  REQUIRE(c.nodes.size() == 1);
  CHECK(c.nodes[0] == 0.0);
  CHECK(c.weights[0] == 1.0);
}

TEST_CASE("non-PD Hankel vectors are refused") {
  CHECK(error_kind([] { (void)hankel_to_atoms({0.0}); }) == ErrorKind::NotPositiveDefinite);
  CHECK(error_kind([] { (void)hankel_to_atoms({1.0, 1.0, 1.0}); }) ==
        ErrorKind::NotPositiveDefinite);
  CHECK(error_kind([] { (void)hankel_to_atoms({1.0, 0.0, 1.0, 0.0, 1.0}); }) ==
        ErrorKind::NotPositiveDefinite);
  CHECK(error_kind([] { (void)hankel_to_atoms({1.0, 0.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("moments of atomic measures") {
  const double r = 1.0 / std::sqrt(3.0);
  const auto m = atoms_moments(AtomicMeasure{{-r, r}, {0.5, 0.5}}, 3);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(std::abs(m[1]) <= 1e-16);
  CHECK(m[2] == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(m[3]) <= 1e-16);
  CHECK(atoms_moments(AtomicMeasure{}, 2) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(atoms_moments(AtomicMeasure{{2.0}, {3.0}}, 3) == std::vector<double>{3, 6, 12, 24});
}

TEST_CASE("round trip through random atomic measures") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 6;
    const auto truth = random_atoms(rng, k);
    const auto lambda = atoms_moments(truth, 2 * (k - 1));
    const auto rec = hankel_to_atoms(lambda);
    REQUIRE(rec.nodes.size() == k);
    for (double w : rec.weights) CHECK(w > 0.0);
    CHECK(std::is_sorted(rec.nodes.begin(), rec.nodes.end()));
    const auto back = atoms_moments(rec, 2 * (k - 1));
    for (std::size_t j = 0; j < back.size(); ++j) {
      CHECK(std::abs(back[j] - lambda[j]) <= 1e-8 * std::max(1.0, std::abs(lambda[j])));
    }
  }
}

TEST_CASE("Stieltjes recurrence of Legendre") {
  const auto g = gauss_legendre(30);
  const auto rec = stieltjes(g, 10);
  CHECK(rec.mass == doctest::Approx(2.0));
  for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(rec.a[k]) <= 1e-14);
  for (std::size_t k = 1; k < 10; ++k) {
    const double kk = static_cast<double>(k);
    CHECK(rec.b[k] == doctest::Approx(kk / std::sqrt(4 * kk * kk - 1)).epsilon(1e-12));
  }
  const auto back = gauss_from_recurrence(rec);
  const auto direct = gauss_legendre(10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(back.nodes[i] == doctest::Approx(direct.nodes[i]).epsilon(1e-12));
    CHECK(back.weights[i] == doctest::Approx(direct.weights[i]).epsilon(1e-12));
  }
  CHECK(error_kind([&] { (void)stieltjes(AtomicMeasure{{0.0, 1.0}, {1.0, 1.0}}, 3); }) ==
        ErrorKind::NotPositiveDefinite);
}
