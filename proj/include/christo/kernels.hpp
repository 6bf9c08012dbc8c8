#ifndef CHRISTO_KERNELS_HPP
#define CHRISTO_KERNELS_HPP

// Data-parallel inner loops. Each kernel has a serial reference version kept
// for tests and benchmarks; the parallel version must produce bit-identical
// output for any thread count.

#include <cstddef>
#include <vector>

#include "christo/basis.hpp"

namespace christo {

class CfEvaluator;

/// Points per shard when accumulating sums. Shards are summed independently
/// and merged in shard order, so results do not depend on the thread count.
inline constexpr std::size_t kShardSize = 4096;

/// Thread cap: CF_MAX_THREADS when set to a positive integer, else the
/// OpenMP default.
int max_threads();

/// sum_i prod_k points[i][k]^index[k] for every index (sharded).
std::vector<double> power_sums_serial(const std::vector<std::vector<double>>& points,
                                      const std::vector<MultiIndex>& indices);
std::vector<double> power_sums_parallel(const std::vector<std::vector<double>>& points,
                                        const std::vector<MultiIndex>& indices);

/// Christoffel function at each point, in input order.
std::vector<double> cf_values_serial(const CfEvaluator& cf,
                                     const std::vector<std::vector<double>>& points);
std::vector<double> cf_values_parallel(const CfEvaluator& cf,
                                       const std::vector<std::vector<double>>& points);

}  // namespace christo

#endif  // CHRISTO_KERNELS_HPP
