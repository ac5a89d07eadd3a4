#include "kernels_common.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace zd::kernels {

std::mt19937_64 run_engine(uint64_t seed, uint64_t index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(index),
                    static_cast<uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace detail {

void fill_transition_row(std::span<const MemoryOneStrategy> players, uint32_t from, double* row) {
  row[0] = 1.0;
  for (size_t i = 0; i < players.size(); ++i) {
    const double p = players[i].p[from];
    const uint32_t width = uint32_t{1} << i;
    for (uint32_t k = 0; k < width; ++k) {
      row[k | width] = row[k] * p;
      row[k] *= 1.0 - p;
    }
  }
}

namespace {

double one_shot(const PayoffTable& table, uint32_t mask, int player) {
  const bool cooperates = (mask >> player) & 1u;
  const int z = std::popcount(mask) - (cooperates ? 1 : 0);
  return cooperates ? table.a[z] : table.b[z];
}

}  // namespace

RolloutBlock simulate_block(const RolloutProblem& problem, uint64_t seed, long first_run, long count) {
  const PayoffTable& table = *problem.table;
  const int n = table.n;
  const double delta = problem.delta;
  const bool keep_history =
      std::any_of(problem.players.begin(), problem.players.end(), [](const Strategy& s) { return !s.is_memory_one(); });
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  RolloutBlock block{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::vector<double> payoff(n);
  std::vector<uint32_t> history;
  for (long run = first_run; run < first_run + count; ++run) {
    auto rng = run_engine(seed, static_cast<uint64_t>(run));
    std::fill(payoff.begin(), payoff.end(), 0.0);
    history.clear();
    double akin = 0.0;

    uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
      if (unit(rng) < problem.players[i].first_move(history, i, n)) mask |= uint32_t{1} << i;
    }
    double discount = 1.0;  // delta^t
    while (true) {
      const double weight = problem.estimator == Estimator::DiscountedSum ? (1.0 - delta) * discount : 1.0 - delta;
      for (int i = 0; i < n; ++i) payoff[i] += weight * one_shot(table, mask, i);
      if (problem.key) akin += weight * (delta * problem.key->p[mask] - static_cast<double>(mask & 1u));

      if (problem.estimator == Estimator::DiscountedSum) {
        discount *= delta;
        if (discount < kWeightCutoff) break;
      } else if (!(unit(rng) < delta)) {
        break;
      }
      if (keep_history) history.push_back(mask);
      const uint32_t previous = mask;
      mask = 0;
      for (int i = 0; i < n; ++i) {
        const Strategy& player = problem.players[i];
        const double q = player.kind() == Strategy::Kind::History
                             ? player.next_move(history, i, n)
                             : player.next_move(std::span<const uint32_t>(&previous, 1), i, n);
        if (unit(rng) < q) mask |= uint32_t{1} << i;
      }
    }
    if (problem.key) akin += (1.0 - delta) * problem.key->p0;

    for (int i = 0; i < n; ++i) {
      block.sum[i] += payoff[i];
      block.sum_sq[i] += payoff[i] * payoff[i];
    }
    const double residual = problem.relation ? enforced_relation_residual(payoff, *problem.relation) : 0.0;
    block.residual += residual;
    block.residual_sq += residual * residual;
    block.akin += akin;
    block.akin_sq += akin * akin;
  }
  return block;
}

}  // namespace detail
}  // namespace zd::kernels
