#ifndef ZD_THRESHOLDS_HPP
#define ZD_THRESHOLDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "zd/game.hpp"
#include "zd/zd_core.hpp"

namespace zd {

// Extremes over z of the constraint margins
//   rho^C(z) = (1-s)(a_z - l) + W_{n-z-1} (b_{z+1} - a_z)
//   rho^D(z) = (1-s)(l - b_z) + W_z (b_z - a_{z-1})
// with W = w_tilde in the maxima and W = w_hat in the minima.
struct RhoExtrema {
  double rho_C_max = 0.0;
  double rho_C_min = 0.0;
  double rho_D_max = 0.0;
  double rho_D_min = 0.0;
};

RhoExtrema rho_extrema(const PayoffTable& table, const PayoffRelation& relation);

// Binding terms name the (lower bound class / upper bound class) pair whose
// phi-window closes last: "C/C", "C/D", "D/C", "D/D", or "none".
struct ThresholdResult {
  double delta_tau = 0.0;
  std::string binding_term = "none";
  bool feasible = false;
  std::optional<bool> attained;  // phi_interval at delta_tau itself, when 0 < delta_tau < 1
  std::string reason;
};

// Extortion (l = b_0, p0 = 0).
ThresholdResult extortion_threshold(const PayoffTable& table, double s, const std::vector<double>& w);
// Generosity (l = a_{n-1}, p0 = 1).
ThresholdResult generosity_threshold(const PayoffTable& table, double s, const std::vector<double>& w);
// Equalizer for p0 in (0, 1); s != 0 is accepted when b_0 < l < a_{n-1}.
// Throws std::domain_error for p0 outside (0, 1).
ThresholdResult equalizer_threshold(const PayoffTable& table, double l, double p0, const std::vector<double>& w,
                                    double s = 0.0);

// Threshold for any relation at a fixed p0 in [0, 1].
ThresholdResult discount_threshold(const RhoExtrema& extrema, double p0);

struct MinimalThreshold {
  bool feasible = false;
  double delta_tau = 1.0;
  double p0 = 0.0;  // an initial probability attaining delta_tau
  std::string binding_term = "none";
};

// Infimum over p0 in [0, 1] of discount_threshold; infeasible when the
// relation is not enforceable at all.
MinimalThreshold minimal_discount_threshold(const PayoffTable& table, const PayoffRelation& relation);

// Smallest delta on the grid {step, 2 step, ...} < 1 at which the oracle
// accepts, bisecting on monotonicity in delta. With p0 given, only that
// initial probability is tried.
std::optional<double> oracle_threshold(const PayoffTable& table, const PayoffRelation& relation, double step,
                                       std::optional<double> p0 = std::nullopt);

// Closed forms for the public goods game with equal weights.
double pgg_slope_bound(int n, double r);
double pgg_threshold(int n, double r, double s);

struct NsdSlopeBounds {
  double extortion_min = 0.0;
  bool generous_unrestricted = true;  // any 0 < s < 1
};

// Closed forms for the multiplayer snowdrift game with equal weights.
NsdSlopeBounds nsd_slope_bounds(int n, double benefit, double cost);
double nsd_generous_threshold(int n, double benefit, double cost, double s);
double nsd_extortion_threshold(int n, double benefit, double cost, double s);

struct SlopeInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;
};

struct PggNashRegions {
  double onset = 0.0;       // smallest enforceable extortion/generous slope
  double crossover = 0.0;   // (n-2)/(n-1), both kinds are equilibria here
  SlopeInterval extortion;  // [onset, crossover]
  SlopeInterval generous;   // [max(onset, crossover), 1)
  double generous_min_delta = 0.0;
};

struct NashRow {
  double s = 0.0;
  double delta_tau = 0.0;
  bool extortion_ne = false;
  bool generous_ne = false;
};

PggNashRegions pgg_nash_regions(int n, double r);
// Slopes onset + k (1 - onset) / steps for k < steps, each with its threshold.
std::vector<NashRow> pgg_nash_table(int n, double r, int steps);

}  // namespace zd

#endif  // ZD_THRESHOLDS_HPP
