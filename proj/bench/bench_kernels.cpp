// Serial vs OpenMP timings for the two parallel kernels.
//   bench_kernels [points] [grid_side] [t]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "christo/christoffel.hpp"
#include "christo/kernels.hpp"
#include "christo/moments.hpp"

using namespace christo;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    best = std::min(best, d.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n_points = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200000;
  const std::size_t side = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 401;
  const unsigned t = argc > 3 ? static_cast<unsigned>(std::strtoul(argv[3], nullptr, 10)) : 4;

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> points(n_points);
  for (auto& p : points) p = {u(rng), u(rng)};
  const auto indices = graded_indices(2, 2 * t);

  std::vector<double> a, b;
  const double ps_serial = best_of(3, [&] { a = power_sums_serial(points, indices); });
  const double ps_parallel = best_of(3, [&] { b = power_sums_parallel(points, indices); });
  const bool ps_same = a == b;

  const auto seq = moments_from_samples(points, t);
  const CfEvaluator cf(moment_matrix(seq, OrderedBasis(1, 1, t)));
  std::vector<std::vector<double>> grid;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      grid.push_back({-1.5 + 3.0 * i / (side - 1), -1.5 + 3.0 * j / (side - 1)});
    }
  }
  const double cf_serial = best_of(3, [&] { a = cf_values_serial(cf, grid); });
  const double cf_parallel = best_of(3, [&] { b = cf_values_parallel(cf, grid); });
  const bool cf_same = a == b;

  std::printf("threads %d\n", max_threads());
  std::printf("%-12s %10s %12s %12s %8s %s\n", "kernel", "size", "serial_s", "parallel_s",
              "speedup", "identical");
  std::printf("%-12s %10zu %12.4f %12.4f %8.2f %s\n", "power_sums", n_points, ps_serial,
              ps_parallel, ps_serial / ps_parallel, ps_same ? "yes" : "no");
  std::printf("%-12s %10zu %12.4f %12.4f %8.2f %s\n", "cf_values", grid.size(), cf_serial,
              cf_parallel, cf_serial / cf_parallel, cf_same ? "yes" : "no");
  return ps_same && cf_same ? 0 : 1;
}
