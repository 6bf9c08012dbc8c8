#ifndef CHRISTO_TESTS_SUPPORT_HPP
#define CHRISTO_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "christo/errors.hpp"
#include "christo/moments.hpp"

namespace testing {

inline christo::MeasureSpec box_spec(std::vector<std::array<double, 2>> bounds) {
  christo::MeasureSpec spec;
  spec.shape = christo::BoxMeasure{std::move(bounds)};
  return spec;
}

inline christo::MeasureSpec square() { return box_spec({{-1.0, 1.0}, {-1.0, 1.0}}); }
inline christo::MeasureSpec segment() { return box_spec({{-1.0, 1.0}}); }

// Region between a(x) = -0.8 + 0.2 x^2 and b(x) = 0.9 - 0.1 x over [-1, 1].
inline christo::CurveRegionMeasure curved_region() {
  christo::CurveRegionMeasure r;
  r.lower = christo::Profile::polynomial({-0.8, 0.0, 0.2});
  r.upper = christo::Profile::polynomial({0.9, -0.1});
  return r;
}

inline christo::MeasureSpec curved() {
  christo::MeasureSpec spec;
  spec.shape = curved_region();
  return spec;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

template <typename F>
christo::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const christo::Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected a christo::Error");
}

}  // namespace testing

#endif  // CHRISTO_TESTS_SUPPORT_HPP
