#include "kernels_common.hpp"

namespace zd::kernels::omp {

std::vector<char> p0_feasibility(std::span<const double> margins, double delta, int grid) {
  std::vector<char> feasible(static_cast<size_t>(grid) + 1);
#pragma omp parallel for schedule(static)
  for (int k = 0; k <= grid; ++k) feasible[k] = detail::feasible_at(margins, delta, k, grid);
  return feasible;
}

Eigen::MatrixXd transition_matrix(std::span<const MemoryOneStrategy> players) {
  const Eigen::Index states = Eigen::Index{1} << players.size();
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(states, states);
#pragma omp parallel for schedule(static)
  for (Eigen::Index from = 0; from < states; ++from) {
    detail::fill_transition_row(players, static_cast<uint32_t>(from), m.row(from).data());
  }
  return m;
}

std::vector<RolloutBlock> rollouts(const RolloutProblem& problem, uint64_t seed, long runs) {
  const long blocks = detail::block_count(runs);
  std::vector<RolloutBlock> out(blocks);
  // Blocks own fixed run ranges, so the schedule never changes the result.
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < blocks; ++b) {
    const long first = b * kRolloutBlock;
    out[b] = detail::simulate_block(problem, seed, first, std::min(kRolloutBlock, runs - first));
  }
  return out;
}

}  // namespace zd::kernels::omp
