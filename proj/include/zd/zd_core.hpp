#ifndef ZD_ZD_CORE_HPP
#define ZD_ZD_CORE_HPP

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zd/game.hpp"

namespace zd {

// Target relation pi_{-key} = s * pi_key + (1 - s) * l, where pi_{-key} is the
// w-weighted payoff of the co-players. w[k] belongs to player k + 1.
struct PayoffRelation {
  double s = 0.0;
  double l = 0.0;
  std::vector<double> w;

  static PayoffRelation equal_weights(int n, double s, double l);
};

enum class WeightPolicy { NonNegative, Unchecked };

// Throws std::invalid_argument if |w| != n - 1, the weights do not sum to one,
// or (with the default policy) a weight is negative.
void validate_relation(const PayoffRelation& relation, int n, WeightPolicy policy = WeightPolicy::NonNegative);

// w_hat[z]: sum of the z smallest weights, w_tilde[z]: sum of the z largest.
struct WeightOrderStatistics {
  std::vector<double> w_hat;
  std::vector<double> w_tilde;
};

WeightOrderStatistics weight_order_statistics(const PayoffRelation& relation);

// p[mask]: probability the key player cooperates after profile `mask`.
struct MemoryOneStrategy {
  std::vector<double> p;
  double p0 = 0.0;
};

struct ZDParameters {
  PayoffRelation relation;
  double phi = 0.0;
  double delta = 0.0;
  double p0 = 0.0;
};

struct FeasibilityInterval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool empty = true;

  double midpoint() const;
};

class InfeasibleParameters : public std::runtime_error {
 public:
  InfeasibleParameters(uint32_t mask, double value);
  uint32_t mask() const { return mask_; }
  double value() const { return value_; }

 private:
  uint32_t mask_;
  double value_;
};

// delta * p_sigma for every profile, without range checks.
std::vector<double> zd_scaled_entries(const PayoffTable& table, const ZDParameters& params);

// ZD memory-one strategy for the given parameters. Throws InfeasibleParameters
// (carrying the worst profile) if an entry leaves [0, 1] by more than kTolerance;
// smaller excursions are clipped.
MemoryOneStrategy zd_entries(const PayoffTable& table, const ZDParameters& params);

// Per-profile constraint margin: rho^C(sigma) where the key cooperates,
// rho^D(sigma) where it defects. Independent of delta, phi and p0.
std::vector<double> constraint_margins(const PayoffTable& table, const PayoffRelation& relation);

// Intersection over all profiles of the phi ranges that keep delta * p in [0, delta].
FeasibilityInterval phi_interval(std::span<const double> margins, double delta, double p0);
FeasibilityInterval phi_interval(const PayoffTable& table, const PayoffRelation& relation, double delta, double p0);

struct NecessaryReport {
  bool pass = true;
  std::string violated;
};

NecessaryReport check_necessary(const PayoffRelation& relation, const PayoffTable& table);

enum class Binding { None, Lower, Upper, Both };

// Decision on whether (s, l, w) is enforceable for some discount factor.
struct EnforceabilityReport {
  bool enforceable = false;
  bool slope_ok = false;
  double l_lower = 0.0;     // max_z of the lower baseline bounds
  double l_upper = 0.0;     // min_z of the upper baseline bounds
  int lower_arg = 0;        // z attaining l_lower
  int upper_arg = 0;        // z attaining l_upper
  Binding binding = Binding::None;  // which bound l meets with equality
  // Admissible initial cooperation probabilities: [p0_min, p0_max].
  double p0_min = 0.0;
  double p0_max = 1.0;
  std::string reason;
};

EnforceabilityReport is_enforceable(const PayoffTable& table, const PayoffRelation& relation);

inline constexpr int kOracleGrid = 1000;

// Ground truth: scans p0 over {0, 1/K, ..., 1} and reports whether some phi works.
bool is_enforceable_oracle(const PayoffTable& table, const PayoffRelation& relation, double delta,
                           int grid = kOracleGrid);

// Smallest feasible p0 on the oracle grid, if any.
std::optional<double> oracle_feasible_p0(const PayoffTable& table, const PayoffRelation& relation,
                                         double delta, int grid = kOracleGrid);

// pi_{-key} - s * pi_key - (1 - s) * l for per-player payoffs (key at index 0).
double enforced_relation_residual(std::span<const double> payoffs, const PayoffRelation& relation);

}  // namespace zd

#endif  // ZD_ZD_CORE_HPP
