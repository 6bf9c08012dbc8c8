#include "doctest.h"

#include <algorithm>

#include "christo/basis.hpp"
#include "christo/polynomial.hpp"
#include "support.hpp"

using namespace christo;
using testing::error_kind;

namespace {

std::vector<std::string> labels_of(std::size_t n, std::size_t p, unsigned t) {
  return OrderedBasis(n, p, t).labels();
}

}  // namespace

TEST_CASE("basis_size is the binomial count") {
  CHECK(basis_size(2, 3) == 10);
  CHECK(basis_size(1, 2) == 3);
  CHECK(basis_size(2, 2) == 6);
  CHECK(basis_size(0, 5) == 1);
  CHECK(basis_size(3, 0) == 1);
  CHECK(basis_size(5, 12) == 6188);
}

TEST_CASE("basis_size overflow is an explicit error") {
  CHECK(error_kind([] { (void)basis_size(200, 200); }) == ErrorKind::SizeOverflow);
}

TEST_CASE("y-blocks come first, then graded lex inside a block") {
  CHECK(labels_of(1, 1, 2) == std::vector<std::string>{"1", "x", "x^2", "y", "x*y", "y^2"});
  CHECK(labels_of(1, 0, 2) == std::vector<std::string>{"1", "x", "x^2"});
  CHECK(labels_of(2, 0, 2) ==
        std::vector<std::string>{"1", "x1", "x2", "x1^2", "x1*x2", "x2^2"});
  CHECK(labels_of(1, 2, 1) == std::vector<std::string>{"1", "x", "y1", "y2"});
}

TEST_CASE("graded lex: lower degree first, then larger leading exponent") {
  CHECK(graded_lex_less(MultiIndex{0, 0}, MultiIndex{1, 0}));
  CHECK(graded_lex_less(MultiIndex{1, 0}, MultiIndex{0, 1}));
  CHECK(graded_lex_less(MultiIndex{0, 1}, MultiIndex{2, 0}));
  CHECK_FALSE(graded_lex_less(MultiIndex{1, 1}, MultiIndex{1, 1}));
  const auto idx = graded_indices(0, 3);
  CHECK(idx.size() == 1);
}

TEST_CASE("monomial vectors") {
  const OrderedBasis b(1, 1, 2);
  const std::vector<double> pt{2.0, 3.0};
  CHECK(b.monomial_vector(pt) == std::vector<double>{1, 2, 4, 3, 6, 9});
  const std::vector<double> zero{0.0, 0.0};
  auto v = b.monomial_vector(zero);
  CHECK(v[0] == 1.0);
  CHECK(std::all_of(v.begin() + 1, v.end(), [](double e) { return e == 0.0; }));
  const std::vector<double> half{0.5};
  CHECK(OrderedBasis(1, 0, 2).monomial_vector(half) == std::vector<double>{1, 0.5, 0.25});
  CHECK(error_kind([&] { (void)b.monomial_vector(half); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("construction errors") {
  CHECK(error_kind([] { OrderedBasis(0, 1, 2); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { OrderedBasis(1, 1, kMaxDegree + 1); }) == ErrorKind::InvalidArgument);
  const OrderedBasis b(1, 1, 2);
  CHECK(error_kind([&] { (void)b.position(MultiIndex{3, 0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("rank and position round-trip, size matches the count") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t p = 0; p <= 2; ++p) {
      for (unsigned t = 0; t <= 5; ++t) {
        const OrderedBasis b(n, p, t);
        CHECK(b.size() == basis_size(n + p, t));
        for (std::size_t r = 0; r < b.size(); ++r) {
          CHECK(b.position(b.at(r)) == r);
          CHECK(b.y_degree(r) == b.at(r).tail(n).degree());
        }
      }
    }
  }
}

TEST_CASE("lower degree bases are order-preserving filters") {
  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t p = 0; p <= 2; ++p) {
      const OrderedBasis big(n, p, 5);
      for (unsigned t = 0; t < 5; ++t) {
        std::vector<MultiIndex> filtered;
        for (const auto& m : big.indices()) {
          if (m.degree() <= t) filtered.push_back(m);
        }
        CHECK(filtered == OrderedBasis(n, p, t).indices());
      }
    }
  }
}

TEST_CASE("y-degree blocks are contiguous and non-decreasing") {
  const OrderedBasis b(2, 2, 4);
  for (std::size_t r = 1; r < b.size(); ++r) CHECK(b.y_degree(r - 1) <= b.y_degree(r));
}

TEST_CASE("polynomial arithmetic") {
  const std::vector<double> c1{1.0, 2.0};
  const std::vector<double> c2{-1.0, 0.0, 3.0};
  const auto a = Polynomial::univariate(c1);
  const auto b = Polynomial::univariate(c2);
  CHECK((a * b).dense() == std::vector<double>{-1.0, -2.0, 3.0, 6.0});
  CHECK((a + b).dense() == std::vector<double>{0.0, 2.0, 3.0});
  CHECK((a - a).is_zero());
  const std::vector<double> x{2.0};
  CHECK(b.evaluate(x) == doctest::Approx(11.0));
  CHECK(horner(c2, 2.0) == doctest::Approx(11.0));
  CHECK(b.degree() == 2);
  CHECK(b.scaled(2.0).coeff(MultiIndex{2}) == 6.0);
}
