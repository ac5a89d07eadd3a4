#ifndef ZD_KERNELS_COMMON_HPP
#define ZD_KERNELS_COMMON_HPP

// Loop bodies shared by the serial and OpenMP kernels.

#include <span>

#include "zd/kernels.hpp"

namespace zd::kernels::detail {

inline bool feasible_at(std::span<const double> margins, double delta, int k, int grid) {
  const double p0 = k == grid ? 1.0 : static_cast<double>(k) / grid;
  return !phi_interval(margins, delta, p0).empty;
}

// Row `from` of the one-round transition matrix; players move independently.
void fill_transition_row(std::span<const MemoryOneStrategy> players, uint32_t from, double* row);

RolloutBlock simulate_block(const RolloutProblem& problem, uint64_t seed, long first_run, long count);

inline long block_count(long runs) { return (runs + kRolloutBlock - 1) / kRolloutBlock; }

}  // namespace zd::kernels::detail

#endif  // ZD_KERNELS_COMMON_HPP
