#include "zd/zd_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zd/kernels.hpp"

namespace zd {

PayoffRelation PayoffRelation::equal_weights(int n, double s, double l) {
  if (n < 2) throw std::invalid_argument("relation needs n >= 2");
  return PayoffRelation{s, l, std::vector<double>(n - 1, 1.0 / (n - 1))};
}

void validate_relation(const PayoffRelation& relation, int n, WeightPolicy policy) {
  if (relation.w.size() != static_cast<size_t>(n - 1)) {
    throw std::invalid_argument("weight vector must have n - 1 entries");
  }
  const double total = std::accumulate(relation.w.begin(), relation.w.end(), 0.0);
  if (std::abs(total - 1.0) > kTolerance) {
    throw std::invalid_argument("co-player weights must sum to 1");
  }
  if (policy == WeightPolicy::NonNegative &&
      std::any_of(relation.w.begin(), relation.w.end(), [](double w) { return w < 0.0; })) {
    throw std::invalid_argument("negative co-player weights need the unchecked weight policy");
  }
}

WeightOrderStatistics weight_order_statistics(const PayoffRelation& relation) {
  std::vector<double> sorted = relation.w;
  std::sort(sorted.begin(), sorted.end());
  const size_t m = sorted.size();
  WeightOrderStatistics stats{std::vector<double>(m + 1, 0.0), std::vector<double>(m + 1, 0.0)};
  for (size_t z = 1; z <= m; ++z) {
    stats.w_hat[z] = stats.w_hat[z - 1] + sorted[z - 1];
    stats.w_tilde[z] = stats.w_tilde[z - 1] + sorted[m - z];
  }
  return stats;
}

double FeasibilityInterval::midpoint() const {
  if (empty) throw std::logic_error("empty feasibility interval has no midpoint");
  if (std::isinf(hi)) return 2.0 * lo;
  return 0.5 * (lo + hi);
}

InfeasibleParameters::InfeasibleParameters(uint32_t mask, double value)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "infeasible parameters: entry for profile " << mask << " is " << value << ", outside [0, 1]";
        return os.str();
      }()),
      mask_(mask),
      value_(value) {}

std::vector<double> constraint_margins(const PayoffTable& table, const PayoffRelation& relation) {
  const int n = table.n;
  const double one_minus_s = 1.0 - relation.s;
  std::vector<double> margins(profile_count(n));
  for (uint32_t mask = 0; mask < margins.size(); ++mask) {
    const int k = std::popcount(mask);  // cooperators including the key player
    // a_{k-1} and b_k under a_{-1} = b_n = 0; the zero cases only arise with an
    // empty weight sum below.
    const double gap = defector_payoff(table, k) - cooperator_payoff(table, k - 1);
    const bool key_cooperates = mask & 1u;
    double weight = 0.0;
    for (int j = 1; j < n; ++j) {
      const bool cooperates = (mask >> j) & 1u;
      if (cooperates != key_cooperates) weight += relation.w[j - 1];
    }
    margins[mask] = key_cooperates
                        ? one_minus_s * (cooperator_payoff(table, k - 1) - relation.l) + weight * gap
                        : one_minus_s * (relation.l - defector_payoff(table, k)) + weight * gap;
  }
  return margins;
}

std::vector<double> zd_scaled_entries(const PayoffTable& table, const ZDParameters& params) {
  const auto margins = constraint_margins(table, params.relation);
  const double drift = (1.0 - params.delta) * params.p0;
  std::vector<double> scaled(margins.size());
  for (uint32_t mask = 0; mask < margins.size(); ++mask) {
    scaled[mask] = (mask & 1u) ? 1.0 - params.phi * margins[mask] - drift : params.phi * margins[mask] - drift;
  }
  return scaled;
}

MemoryOneStrategy zd_entries(const PayoffTable& table, const ZDParameters& params) {
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(params.p0 >= 0.0 && params.p0 <= 1.0)) throw std::invalid_argument("p0 must lie in [0, 1]");
  MemoryOneStrategy strategy{zd_scaled_entries(table, params), params.p0};
  uint32_t worst = 0;
  double worst_excess = 0.0;
  for (uint32_t mask = 0; mask < strategy.p.size(); ++mask) {
    double& entry = strategy.p[mask];
    entry /= params.delta;
    const double excess = std::max(-entry, entry - 1.0);
    if (excess > worst_excess) {
      worst_excess = excess;
      worst = mask;
    }
  }
  if (worst_excess > kTolerance) throw InfeasibleParameters(worst, strategy.p[worst]);
  for (double& entry : strategy.p) entry = std::clamp(entry, 0.0, 1.0);
  return strategy;
}

FeasibilityInterval phi_interval(std::span<const double> margins, double delta, double p0) {
  FeasibilityInterval interval;
  interval.lo = 0.0;
  interval.hi = std::numeric_limits<double>::infinity();
  const double x = 1.0 - delta;
  for (uint32_t mask = 0; mask < margins.size(); ++mask) {
    double rho = margins[mask];
    if (std::abs(rho) <= kTolerance) rho = 0.0;
    // lower <= phi * rho <= upper
    const bool key_cooperates = mask & 1u;
    const double lower = key_cooperates ? x * (1.0 - p0) : x * p0;
    const double upper = key_cooperates ? 1.0 - x * p0 : delta + x * p0;
    if (rho > 0.0) {
      interval.lo = std::max(interval.lo, lower / rho);
      interval.hi = std::min(interval.hi, upper / rho);
    } else if (rho < 0.0 || lower > 0.0) {
      // rho < 0 would force phi <= 0.
      return FeasibilityInterval{};
    }
  }
  if (interval.lo > interval.hi) {
    if (interval.lo - interval.hi > kTolerance * std::max(1.0, interval.hi)) return FeasibilityInterval{};
    interval.hi = interval.lo;
  }
  interval.empty = !(interval.lo > 0.0);
  return interval;
}

FeasibilityInterval phi_interval(const PayoffTable& table, const PayoffRelation& relation, double delta, double p0) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("p0 must lie in [0, 1]");
  const auto margins = constraint_margins(table, relation);
  return phi_interval(margins, delta, p0);
}

NecessaryReport check_necessary(const PayoffRelation& relation, const PayoffTable& table) {
  const double min_w = relation.w.empty() ? 0.0 : *std::min_element(relation.w.begin(), relation.w.end());
  const double b0 = table.b.front();
  const double top = table.a.back();
  if (!(relation.s < 1.0)) return {false, "s < 1 required"};
  if (!(relation.s > -min_w)) return {false, "s > -min_j w_j required"};
  if (!(relation.l >= b0)) return {false, "l >= b_0 required"};
  if (!(relation.l <= top)) return {false, "l <= a_{n-1} required"};
  if (relation.l == b0 && relation.l == top) return {false, "b_0 < l or l < a_{n-1} required"};
  return {};
}

EnforceabilityReport is_enforceable(const PayoffTable& table, const PayoffRelation& relation) {
  const int n = table.n;
  const double s = relation.s;
  EnforceabilityReport report;
  const double min_w = *std::min_element(relation.w.begin(), relation.w.end());
  report.slope_ok = s < 1.0 && s > -1.0 / (n - 1) && s > -min_w;
  if (!report.slope_ok) {
    report.reason = s >= 1.0 ? "s < 1 required" : "s > max(-1/(n-1), -min_j w_j) required";
    report.l_lower = std::numeric_limits<double>::quiet_NaN();
    report.l_upper = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const auto stats = weight_order_statistics(relation);
  const double one_minus_s = 1.0 - s;
  report.l_lower = -std::numeric_limits<double>::infinity();
  report.l_upper = std::numeric_limits<double>::infinity();
  for (int z = 0; z < n; ++z) {
    // a_{-1} = b_n = 0 at z = 0 and z = n - 1; both meet a zero weight sum.
    const double lower = table.b[z] - stats.w_hat[z] * (table.b[z] - cooperator_payoff(table, z - 1)) / one_minus_s;
    const double upper =
        table.a[z] + stats.w_hat[n - z - 1] * (defector_payoff(table, z + 1) - table.a[z]) / one_minus_s;
    if (lower > report.l_lower) {
      report.l_lower = lower;
      report.lower_arg = z;
    }
    if (upper < report.l_upper) {
      report.l_upper = upper;
      report.upper_arg = z;
    }
  }
  const double l = relation.l;
  auto tol = [l](double bound) { return kTolerance * std::max({1.0, std::abs(l), std::abs(bound)}); };
  const bool lower_eq = std::abs(l - report.l_lower) <= tol(report.l_lower);
  const bool upper_eq = std::abs(l - report.l_upper) <= tol(report.l_upper);
  const bool lower_ok = lower_eq || l > report.l_lower;
  const bool upper_ok = upper_eq || l < report.l_upper;
  report.binding = lower_eq && upper_eq ? Binding::Both
                   : lower_eq           ? Binding::Lower
                   : upper_eq           ? Binding::Upper
                                        : Binding::None;
  if (!lower_ok) {
    report.reason = "l below the lower baseline bound";
  } else if (!upper_ok) {
    report.reason = "l above the upper baseline bound";
  } else if (lower_eq && upper_eq) {
    report.reason = "both baseline bounds met with equality";
  } else {
    report.enforceable = true;
  }
  if (lower_eq) report.p0_max = 0.0;
  if (upper_eq) report.p0_min = 1.0;
  return report;
}

std::optional<double> oracle_feasible_p0(const PayoffTable& table, const PayoffRelation& relation, double delta,
                                         int grid) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (grid < 1) throw std::invalid_argument("oracle grid needs at least one step");
  const auto margins = constraint_margins(table, relation);
  // k = 0 and k = grid are the exact endpoints 0 and 1.
  const auto feasible = kernels::omp::p0_feasibility(margins, delta, grid);
  const auto it = std::find(feasible.begin(), feasible.end(), char{1});
  if (it == feasible.end()) return std::nullopt;
  return static_cast<double>(it - feasible.begin()) / grid;
}

bool is_enforceable_oracle(const PayoffTable& table, const PayoffRelation& relation, double delta, int grid) {
  return oracle_feasible_p0(table, relation, delta, grid).has_value();
}

double enforced_relation_residual(std::span<const double> payoffs, const PayoffRelation& relation) {
  if (payoffs.size() != relation.w.size() + 1) throw std::invalid_argument("payoff vector must have n entries");
  double others = 0.0;
  for (size_t k = 0; k < relation.w.size(); ++k) others += relation.w[k] * payoffs[k + 1];
  return others - relation.s * payoffs[0] - (1.0 - relation.s) * relation.l;
}

}  // namespace zd
