#ifndef ZD_ENGINE_HPP
#define ZD_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zd/game.hpp"
#include "zd/zd_core.hpp"

namespace zd {

// Mean discounted distribution over action profiles, v = (1-delta) sum_t delta^t v(t).
struct DiscountedDistribution {
  std::vector<double> v;
  double delta = 0.0;
};

// Cooperation probability given the full history of profiles (oldest first).
// An empty history asks for the first-round move.
using HistoryRule = std::function<double(std::span<const uint32_t> history, int player, int n)>;

// A player's strategy in repeated play. Memory-one vectors are indexed by the
// global profile mask (bit i = player i cooperates).
class Strategy {
 public:
  enum class Kind { AllC, AllD, Random, MemoryOne, History };

  static Strategy all_c();
  static Strategy all_d();
  static Strategy random(double q);
  static Strategy memory_one(MemoryOneStrategy m);
  static Strategy history_rule(std::string name, HistoryRule rule);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_memory_one() const { return kind_ != Kind::History; }

  // Memory-one form over n players; throws std::logic_error for history rules.
  MemoryOneStrategy as_memory_one(int n) const;

  double first_move(std::span<const uint32_t> empty_history, int player, int n) const;
  double next_move(std::span<const uint32_t> history, int player, int n) const;

 private:
  Kind kind_ = Kind::AllD;
  std::string name_;
  double q_ = 0.0;
  MemoryOneStrategy m1_;
  HistoryRule rule_;
};

// Rewrites a strategy written from player 0's perspective for use by `player`,
// swapping the roles of bit 0 and bit `player` in the profile index.
MemoryOneStrategy relabel_for_player(const MemoryOneStrategy& own_view, int player, int n);

// Cooperates iff co-players cooperated at least half the time over the last
// three rounds; cooperates in the first round.
Strategy majority_of_last_three();

struct SimulationReport {
  std::vector<double> payoff_mean;
  std::vector<double> payoff_stderr;
  long runs = 1;
  uint64_t seed = 0;
  double residual = 0.0;
  double residual_stderr = 0.0;
  double akin_residual = 0.0;
  double akin_stderr = 0.0;
  std::string engine;
};

inline constexpr int kMaxExactPlayers = 12;

// Solves (I - delta M^T) x = v(0) for all-memory-one play; v = (1 - delta) x.
DiscountedDistribution exact_distribution(std::span<const MemoryOneStrategy> players, double delta);

std::vector<double> discounted_payoffs(const DiscountedDistribution& dist, const PayoffTable& table);

// (delta p - p_rep) . v + (1 - delta) p0; zero when `dist` was produced with
// the key player using `strategy`.
double verify_akin(const MemoryOneStrategy& strategy, const DiscountedDistribution& dist);

// Exact evaluation wrapped as a report (zero standard errors).
SimulationReport exact_report(const PayoffTable& table, std::span<const Strategy> players, double delta,
                              const std::optional<PayoffRelation>& relation);

enum class Estimator { DiscountedSum, GeometricStop };

struct MonteCarloOptions {
  Estimator estimator = Estimator::DiscountedSum;
  std::optional<PayoffRelation> relation;
  bool parallel = true;
};

// Truncation point of the discounted-sum estimator.
inline constexpr double kWeightCutoff = 1.0e-12;

SimulationReport monte_carlo(const PayoffTable& table, std::span<const Strategy> players, double delta, long runs,
                             uint64_t seed, const MonteCarloOptions& options = {});

}  // namespace zd

#endif  // ZD_ENGINE_HPP
