#include "zd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "zd/kernels.hpp"

namespace zd {

Strategy Strategy::all_c() {
  Strategy s;
  s.kind_ = Kind::AllC;
  s.name_ = "allc";
  return s;
}

Strategy Strategy::all_d() {
  Strategy s;
  s.kind_ = Kind::AllD;
  s.name_ = "alld";
  return s;
}

Strategy Strategy::random(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("random strategy needs q in [0, 1]");
  Strategy s;
  s.kind_ = Kind::Random;
  s.name_ = "random";
  s.q_ = q;
  return s;
}

Strategy Strategy::memory_one(MemoryOneStrategy m) {
  auto bad = [](double x) { return !(x >= 0.0 && x <= 1.0); };
  if (bad(m.p0) || std::any_of(m.p.begin(), m.p.end(), bad)) {
    throw std::invalid_argument("memory-one probabilities must lie in [0, 1]");
  }
  Strategy s;
  s.kind_ = Kind::MemoryOne;
  s.name_ = "memory-one";
  s.m1_ = std::move(m);
  return s;
}

Strategy Strategy::history_rule(std::string name, HistoryRule rule) {
  Strategy s;
  s.kind_ = Kind::History;
  s.name_ = std::move(name);
  s.rule_ = std::move(rule);
  return s;
}

MemoryOneStrategy Strategy::as_memory_one(int n) const {
  const size_t states = profile_count(n);
  switch (kind_) {
    case Kind::AllC:
      return {std::vector<double>(states, 1.0), 1.0};
    case Kind::AllD:
      return {std::vector<double>(states, 0.0), 0.0};
    case Kind::Random:
      return {std::vector<double>(states, q_), q_};
    case Kind::MemoryOne:
      if (m1_.p.size() != states) throw std::invalid_argument("memory-one vector does not match the group size");
      return m1_;
    case Kind::History:
      break;
  }
  throw std::logic_error("history-dependent strategy has no memory-one form");
}

double Strategy::first_move(std::span<const uint32_t> empty_history, int player, int n) const {
  switch (kind_) {
    case Kind::AllC: return 1.0;
    case Kind::AllD: return 0.0;
    case Kind::Random: return q_;
    case Kind::MemoryOne: return m1_.p0;
    case Kind::History: return rule_(empty_history, player, n);
  }
  return 0.0;
}

double Strategy::next_move(std::span<const uint32_t> history, int player, int n) const {
  switch (kind_) {
    case Kind::AllC: return 1.0;
    case Kind::AllD: return 0.0;
    case Kind::Random: return q_;
    case Kind::MemoryOne: return m1_.p[history.back()];
    case Kind::History: return rule_(history, player, n);
  }
  return 0.0;
}

MemoryOneStrategy relabel_for_player(const MemoryOneStrategy& own_view, int player, int n) {
  if (player < 0 || player >= n) throw std::out_of_range("player index out of range");
  MemoryOneStrategy global{std::vector<double>(profile_count(n)), own_view.p0};
  for (uint32_t mask = 0; mask < global.p.size(); ++mask) {
    const uint32_t bit0 = mask & 1u;
    const uint32_t bitp = (mask >> player) & 1u;
    uint32_t swapped = mask & ~(1u | (uint32_t{1} << player));
    swapped |= bitp | (bit0 << player);
    global.p[mask] = own_view.p[swapped];
  }
  return global;
}

Strategy majority_of_last_three() {
  return Strategy::history_rule("majority3", [](std::span<const uint32_t> history, int player, int n) {
    if (history.empty()) return 1.0;
    const size_t depth = std::min<size_t>(3, history.size());
    int cooperations = 0;
    for (size_t t = history.size() - depth; t < history.size(); ++t) {
      for (int j = 0; j < n; ++j) {
        if (j != player && ((history[t] >> j) & 1u)) ++cooperations;
      }
    }
    return 2 * cooperations >= static_cast<int>(depth) * (n - 1) ? 1.0 : 0.0;
  });
}

DiscountedDistribution exact_distribution(std::span<const MemoryOneStrategy> players, double delta) {
  const int n = static_cast<int>(players.size());
  if (n < 1 || n > kMaxExactPlayers) throw std::invalid_argument("exact engine supports 1 to 12 players");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const Eigen::Index states = Eigen::Index{1} << n;
  for (const auto& m : players) {
    if (m.p.size() != static_cast<size_t>(states)) throw std::invalid_argument("memory-one vector size mismatch");
  }

  Eigen::VectorXd initial(states);
  for (Eigen::Index mask = 0; mask < states; ++mask) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= ((mask >> i) & 1) ? players[i].p0 : 1.0 - players[i].p0;
    initial[mask] = prob;
  }
  const Eigen::MatrixXd transition = kernels::omp::transition_matrix(players);
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(states, states) - delta * transition.transpose();
  const Eigen::VectorXd x = system.partialPivLu().solve(initial);

  DiscountedDistribution dist{std::vector<double>(states), delta};
  for (Eigen::Index k = 0; k < states; ++k) dist.v[k] = (1.0 - delta) * x[k];
  const double total = std::accumulate(dist.v.begin(), dist.v.end(), 0.0);
  if (!std::isfinite(total) || std::abs(total - 1.0) > 1.0e-10) {
    throw std::logic_error("exact engine: discounted distribution does not sum to one");
  }
  return dist;
}

std::vector<double> discounted_payoffs(const DiscountedDistribution& dist, const PayoffTable& table) {
  if (dist.v.size() != profile_count(table.n)) throw std::invalid_argument("distribution does not match the game");
  std::vector<double> payoffs(table.n, 0.0);
  for (uint32_t mask = 0; mask < dist.v.size(); ++mask) {
    const ActionProfile profile(mask, table.n);
    for (int i = 0; i < table.n; ++i) payoffs[i] += profile_payoff(table, profile, i) * dist.v[mask];
  }
  return payoffs;
}

double verify_akin(const MemoryOneStrategy& strategy, const DiscountedDistribution& dist) {
  if (strategy.p.size() != dist.v.size()) throw std::invalid_argument("strategy does not match the distribution");
  double total = 0.0;
  for (uint32_t mask = 0; mask < dist.v.size(); ++mask) {
    const double repeat = (mask & 1u) ? 1.0 : 0.0;
    total += (dist.delta * strategy.p[mask] - repeat) * dist.v[mask];
  }
  return total + (1.0 - dist.delta) * strategy.p0;
}

SimulationReport exact_report(const PayoffTable& table, std::span<const Strategy> players, double delta,
                              const std::optional<PayoffRelation>& relation) {
  if (players.size() != static_cast<size_t>(table.n)) throw std::invalid_argument("need one strategy per player");
  std::vector<MemoryOneStrategy> m1;
  m1.reserve(players.size());
  for (const auto& s : players) {
    if (!s.is_memory_one()) throw std::invalid_argument("exact engine needs memory-one strategies");
    m1.push_back(s.as_memory_one(table.n));
  }
  const auto dist = exact_distribution(m1, delta);
  SimulationReport report;
  report.engine = "exact";
  report.payoff_mean = discounted_payoffs(dist, table);
  report.payoff_stderr.assign(table.n, 0.0);
  report.residual = relation ? enforced_relation_residual(report.payoff_mean, *relation) : 0.0;
  report.akin_residual = verify_akin(m1.front(), dist);
  return report;
}

SimulationReport monte_carlo(const PayoffTable& table, std::span<const Strategy> players, double delta, long runs,
                             uint64_t seed, const MonteCarloOptions& options) {
  if (players.size() != static_cast<size_t>(table.n)) throw std::invalid_argument("need one strategy per player");
  if (runs < 1) throw std::invalid_argument("need at least one run");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (table.n > 31) throw std::invalid_argument("at most 31 players");

  std::optional<MemoryOneStrategy> key;
  if (players.front().is_memory_one()) key = players.front().as_memory_one(table.n);
  kernels::RolloutProblem problem{&table, players, delta, options.estimator,
                                  options.relation ? &*options.relation : nullptr, key ? &*key : nullptr};
  const auto blocks =
      options.parallel ? kernels::omp::rollouts(problem, seed, runs) : kernels::serial::rollouts(problem, seed, runs);

  // Block order is fixed, so the reduction is schedule independent.
  kernels::RolloutBlock total{std::vector<double>(table.n, 0.0), std::vector<double>(table.n, 0.0)};
  for (const auto& b : blocks) {
    for (int i = 0; i < table.n; ++i) {
      total.sum[i] += b.sum[i];
      total.sum_sq[i] += b.sum_sq[i];
    }
    total.residual += b.residual;
    total.residual_sq += b.residual_sq;
    total.akin += b.akin;
    total.akin_sq += b.akin_sq;
  }
  const double count = static_cast<double>(runs);
  auto stderr_of = [count](double sum, double sum_sq) {
    if (count < 2.0) return 0.0;
    const double mean = sum / count;
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
    return std::sqrt(var / count);
  };

  SimulationReport report;
  report.engine = "mc";
  report.runs = runs;
  report.seed = seed;
  for (int i = 0; i < table.n; ++i) {
    report.payoff_mean.push_back(total.sum[i] / count);
    report.payoff_stderr.push_back(stderr_of(total.sum[i], total.sum_sq[i]));
  }
  report.residual = total.residual / count;
  report.residual_stderr = stderr_of(total.residual, total.residual_sq);
  report.akin_residual = key ? total.akin / count : std::numeric_limits<double>::quiet_NaN();
  report.akin_stderr = key ? stderr_of(total.akin, total.akin_sq) : 0.0;
  return report;
}

}  // namespace zd
