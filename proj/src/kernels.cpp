#include "christo/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "christo/christoffel.hpp"

namespace christo {

int max_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("CF_MAX_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

namespace {

unsigned max_exponent(const std::vector<MultiIndex>& indices) {
  unsigned m = 0;
  for (const auto& g : indices) {
    for (std::size_t i = 0; i < g.dim(); ++i) m = std::max(m, g[i]);
  }
  return m;
}

// Sums over points [begin, end) into out (zeroed by the caller).
void shard_sums(const std::vector<std::vector<double>>& points,
                const std::vector<MultiIndex>& indices, unsigned max_exp,
                std::size_t begin, std::size_t end, std::vector<double>& out) {
  if (points.empty()) return;
  const std::size_t d = points.front().size();
  std::vector<double> pw(d * (max_exp + 1));
  for (std::size_t i = begin; i < end; ++i) {
    const auto& p = points[i];
    for (std::size_t k = 0; k < d; ++k) {
      double* row = &pw[k * (max_exp + 1)];
      row[0] = 1.0;
      for (unsigned e = 1; e <= max_exp; ++e) row[e] = row[e - 1] * p[k];
    }
    for (std::size_t j = 0; j < indices.size(); ++j) {
      double m = 1.0;
      for (std::size_t k = 0; k < d; ++k) m *= pw[k * (max_exp + 1) + indices[j][k]];
      out[j] += m;
    }
  }
}

std::size_t shard_count(std::size_t n) { return (n + kShardSize - 1) / kShardSize; }

}  // namespace

std::vector<double> power_sums_serial(const std::vector<std::vector<double>>& points,
                                      const std::vector<MultiIndex>& indices) {
  const unsigned max_exp = max_exponent(indices);
  const std::size_t shards = shard_count(points.size());
  std::vector<double> total(indices.size(), 0.0);
  std::vector<double> part(indices.size());
  for (std::size_t s = 0; s < shards; ++s) {
    std::fill(part.begin(), part.end(), 0.0);
    shard_sums(points, indices, max_exp, s * kShardSize,
               std::min(points.size(), (s + 1) * kShardSize), part);
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += part[j];
  }
  return total;
}

std::vector<double> power_sums_parallel(const std::vector<std::vector<double>>& points,
                                        const std::vector<MultiIndex>& indices) {
  const unsigned max_exp = max_exponent(indices);
  const std::size_t shards = shard_count(points.size());
  std::vector<std::vector<double>> parts(shards, std::vector<double>(indices.size(), 0.0));
  const auto n = static_cast<long>(shards);
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (long s = 0; s < n; ++s) {
    const auto su = static_cast<std::size_t>(s);
    shard_sums(points, indices, max_exp, su * kShardSize,
               std::min(points.size(), (su + 1) * kShardSize), parts[su]);
  }
  std::vector<double> total(indices.size(), 0.0);
  for (const auto& part : parts) {
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += part[j];
  }
  return total;
}

std::vector<double> cf_values_serial(const CfEvaluator& cf,
                                     const std::vector<std::vector<double>>& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = cf.value(points[i]);
  return out;
}

std::vector<double> cf_values_parallel(const CfEvaluator& cf,
                                       const std::vector<std::vector<double>>& points) {
  std::vector<double> out(points.size());
  const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = cf.value(points[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace christo
