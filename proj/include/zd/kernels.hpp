#ifndef ZD_KERNELS_HPP
#define ZD_KERNELS_HPP

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version; both produce bit-identical results.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "zd/engine.hpp"
#include "zd/zd_core.hpp"

namespace zd::kernels {

// Monte Carlo problem shared by all runs.
struct RolloutProblem {
  const PayoffTable* table = nullptr;
  std::span<const Strategy> players;
  double delta = 0.0;
  Estimator estimator = Estimator::DiscountedSum;
  const PayoffRelation* relation = nullptr;   // residual is zero when absent
  const MemoryOneStrategy* key = nullptr;     // akin residual is zero when absent
};

// Sums over one fixed block of runs.
struct RolloutBlock {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  double residual = 0.0, residual_sq = 0.0;
  double akin = 0.0, akin_sq = 0.0;
};

inline constexpr long kRolloutBlock = 256;

// Per-run random stream: run `index` of `seed` always draws the same numbers,
// whichever thread executes it.
std::mt19937_64 run_engine(uint64_t seed, uint64_t index);

namespace serial {
// entry k: whether some phi is feasible at p0 = k / grid.
std::vector<char> p0_feasibility(std::span<const double> margins, double delta, int grid);
// M(from, to): probability of moving between profiles in one round.
Eigen::MatrixXd transition_matrix(std::span<const MemoryOneStrategy> players);
std::vector<RolloutBlock> rollouts(const RolloutProblem& problem, uint64_t seed, long runs);
}  // namespace serial

namespace omp {
std::vector<char> p0_feasibility(std::span<const double> margins, double delta, int grid);
Eigen::MatrixXd transition_matrix(std::span<const MemoryOneStrategy> players);
std::vector<RolloutBlock> rollouts(const RolloutProblem& problem, uint64_t seed, long runs);
}  // namespace omp

}  // namespace zd::kernels

#endif  // ZD_KERNELS_HPP
