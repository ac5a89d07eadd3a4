#include "zd/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zd {
namespace {

double snap(double x) { return std::abs(x) <= kTolerance ? 0.0 : x; }

RhoExtrema snapped(RhoExtrema e) {
  return {snap(e.rho_C_max), snap(e.rho_C_min), snap(e.rho_D_max), snap(e.rho_D_min)};
}

struct Candidate {
  double value;
  const char* term;
};

ThresholdResult pick_max(std::initializer_list<Candidate> terms) {
  ThresholdResult result;
  result.feasible = true;
  for (const auto& t : terms) {
    if (t.value > result.delta_tau) {
      result.delta_tau = t.value;
      result.binding_term = t.term;
    }
  }
  return result;
}

void mark_attained(ThresholdResult& result, const PayoffTable& table, const PayoffRelation& relation, double p0) {
  if (result.feasible && result.delta_tau > 0.0 && result.delta_tau < 1.0) {
    result.attained = !phi_interval(table, relation, result.delta_tau, p0).empty;
  }
}

ThresholdResult infeasible(std::string reason) {
  ThresholdResult r;
  r.delta_tau = 1.0;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

RhoExtrema rho_extrema(const PayoffTable& table, const PayoffRelation& relation) {
  const int n = table.n;
  const double one_minus_s = 1.0 - relation.s;
  const double l = relation.l;
  const auto stats = weight_order_statistics(relation);
  constexpr double inf = std::numeric_limits<double>::infinity();
  RhoExtrema e{-inf, inf, -inf, inf};
  for (int z = 0; z < n; ++z) {
    // a_{-1} = b_n = 0; both only appear next to a zero weight sum.
    const double gap_c = defector_payoff(table, z + 1) - table.a[z];
    const double gap_d = table.b[z] - cooperator_payoff(table, z - 1);
    const double base_c = one_minus_s * (table.a[z] - l);
    const double base_d = one_minus_s * (l - table.b[z]);
    e.rho_C_max = std::max(e.rho_C_max, base_c + stats.w_tilde[n - z - 1] * gap_c);
    e.rho_C_min = std::min(e.rho_C_min, base_c + stats.w_hat[n - z - 1] * gap_c);
    e.rho_D_max = std::max(e.rho_D_max, base_d + stats.w_tilde[z] * gap_d);
    e.rho_D_min = std::min(e.rho_D_min, base_d + stats.w_hat[z] * gap_d);
  }
  return e;
}

ThresholdResult extortion_threshold(const PayoffTable& table, double s, const std::vector<double>& w) {
  const PayoffRelation relation{s, table.b.front(), w};
  const auto check = is_enforceable(table, relation);
  if (!check.enforceable) return infeasible(check.reason);
  const auto e = snapped(rho_extrema(table, relation));
  if (!(e.rho_C_max > 0.0 && e.rho_C_min > 0.0)) return infeasible("extortion needs rho_C_min > 0");
  // rho_C_max = rho_C_min or rho_D_max = 0 leave the respective window open for every delta.
  auto result = pick_max({
      {e.rho_C_max > e.rho_C_min ? (e.rho_C_max - e.rho_C_min) / e.rho_C_max : 0.0, "C/C"},
      {e.rho_D_max > 0.0 ? e.rho_D_max / (e.rho_D_max + e.rho_C_min) : 0.0, "C/D"},
  });
  mark_attained(result, table, relation, 0.0);
  return result;
}

ThresholdResult generosity_threshold(const PayoffTable& table, double s, const std::vector<double>& w) {
  const PayoffRelation relation{s, table.a.back(), w};
  const auto check = is_enforceable(table, relation);
  if (!check.enforceable) return infeasible(check.reason);
  const auto e = snapped(rho_extrema(table, relation));
  if (!(e.rho_D_max > 0.0 && e.rho_D_min > 0.0)) return infeasible("generosity needs rho_D_min > 0");
  auto result = pick_max({
      {e.rho_D_max > e.rho_D_min ? (e.rho_D_max - e.rho_D_min) / e.rho_D_max : 0.0, "D/D"},
      {e.rho_C_max > 0.0 ? e.rho_C_max / (e.rho_C_max + e.rho_D_min) : 0.0, "D/C"},
  });
  mark_attained(result, table, relation, 1.0);
  return result;
}

ThresholdResult equalizer_threshold(const PayoffTable& table, double l, double p0, const std::vector<double>& w,
                                    double s) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::domain_error("equalizer thresholds need p0 in (0, 1)");
  const PayoffRelation relation{s, l, w};
  if (s != 0.0 && !(l > table.b.front() && l < table.a.back())) {
    return infeasible("s != 0 needs b_0 < l < a_{n-1}");
  }
  const auto check = is_enforceable(table, relation);
  if (!check.enforceable) return infeasible(check.reason);
  const auto e = snapped(rho_extrema(table, relation));
  if (!(e.rho_C_min > 0.0 && e.rho_D_min > 0.0)) return infeasible("interior p0 needs positive margin minima");
  const double q = 1.0 - p0;
  // A vanishing spread (max == min) places no constraint.
  auto result = pick_max({
      {e.rho_D_max > e.rho_D_min ? 1.0 - e.rho_D_min / (e.rho_D_min + (e.rho_D_max - e.rho_D_min) * p0) : 0.0,
       "D/D"},
      {1.0 - e.rho_C_min / (q * (e.rho_C_min + e.rho_D_max)), "C/D"},
      {e.rho_C_max > e.rho_C_min ? 1.0 - e.rho_C_min / (q * (e.rho_C_max - e.rho_C_min) + e.rho_C_min) : 0.0,
       "C/C"},
      {1.0 - e.rho_D_min / ((e.rho_C_max + e.rho_D_min) * p0), "D/C"},
  });
  mark_attained(result, table, relation, p0);
  return result;
}

ThresholdResult discount_threshold(const RhoExtrema& raw, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::domain_error("p0 must lie in [0, 1]");
  const auto e = snapped(raw);
  if (e.rho_C_min < 0.0 || e.rho_D_min < 0.0) return infeasible("negative constraint margin");
  if (e.rho_C_min == 0.0 && p0 < 1.0) return infeasible("rho_C_min = 0 needs p0 = 1");
  if (e.rho_D_min == 0.0 && p0 > 0.0) return infeasible("rho_D_min = 0 needs p0 = 0");
  if (e.rho_C_min == 0.0 && e.rho_D_min == 0.0) return infeasible("both margin minima vanish");

  // Windows: (1-delta) alpha_X <= phi <= (1 - (1-delta) beta_Y) / rho_Y_max.
  // Nonempty iff delta >= 1 - 1 / (alpha_X rho_Y_max + beta_Y) for each pair.
  const double alpha_c = p0 == 1.0 ? 0.0 : (1.0 - p0) / e.rho_C_min;
  const double alpha_d = p0 == 0.0 ? 0.0 : p0 / e.rho_D_min;
  auto term = [](double alpha, double rho_max, double beta) {
    if (!(rho_max > 0.0)) return 0.0;
    const double reach = alpha * rho_max + beta;
    return reach > 1.0 ? 1.0 - 1.0 / reach : 0.0;
  };
  return pick_max({
      {term(alpha_c, e.rho_C_max, p0), "C/C"},
      {term(alpha_c, e.rho_D_max, 1.0 - p0), "C/D"},
      {term(alpha_d, e.rho_C_max, p0), "D/C"},
      {term(alpha_d, e.rho_D_max, 1.0 - p0), "D/D"},
  });
}

MinimalThreshold minimal_discount_threshold(const PayoffTable& table, const PayoffRelation& relation) {
  MinimalThreshold best;
  if (!is_enforceable(table, relation).enforceable) return best;
  const auto e = snapped(rho_extrema(table, relation));

  // The C-lower pairs shrink and the D-lower pairs grow with p0, so the
  // minimum over p0 sits at an endpoint or where a shrinking reach meets a
  // growing one. Reaches are affine in p0: value(p0) = at0 + slope * p0.
  std::vector<double> candidates{0.0, 1.0};
  if (e.rho_C_min > 0.0 && e.rho_D_min > 0.0) {
    struct Affine {
      double at0, slope;
    };
    const Affine falling[] = {
        {e.rho_C_max / e.rho_C_min, 1.0 - e.rho_C_max / e.rho_C_min},
        {(e.rho_D_max + e.rho_C_min) / e.rho_C_min, -(e.rho_D_max + e.rho_C_min) / e.rho_C_min},
    };
    const Affine rising[] = {
        {0.0, (e.rho_C_max + e.rho_D_min) / e.rho_D_min},
        {1.0, e.rho_D_max / e.rho_D_min - 1.0},
    };
    for (const auto& f : falling) {
      for (const auto& r : rising) {
        const double dslope = r.slope - f.slope;
        if (dslope == 0.0) continue;
        const double p0 = (f.at0 - r.at0) / dslope;
        if (p0 > 0.0 && p0 < 1.0) candidates.push_back(p0);
      }
    }
  }
  for (double p0 : candidates) {
    const auto t = discount_threshold(e, p0);
    if (t.feasible && (!best.feasible || t.delta_tau < best.delta_tau)) {
      best.feasible = true;
      best.delta_tau = t.delta_tau;
      best.p0 = p0;
      best.binding_term = t.binding_term;
    }
  }
  return best;
}

std::optional<double> oracle_threshold(const PayoffTable& table, const PayoffRelation& relation, double step,
                                       std::optional<double> p0) {
  if (!(step > 0.0 && step < 1.0)) throw std::invalid_argument("grid step must lie in (0, 1)");
  const auto margins = constraint_margins(table, relation);
  auto accepts = [&](long k) {
    const double delta = k * step;
    if (p0) return !phi_interval(margins, delta, *p0).empty;
    return is_enforceable_oracle(table, relation, delta);
  };
  long top = static_cast<long>(std::floor(1.0 / step));
  while (top > 0 && top * step >= 1.0) --top;
  if (top < 1 || !accepts(top)) return std::nullopt;
  long bad = 0;  // delta = 0 is never enforceable
  while (top - bad > 1) {
    const long mid = bad + (top - bad) / 2;
    if (accepts(mid)) {
      top = mid;
    } else {
      bad = mid;
    }
  }
  return top * step;
}

double pgg_slope_bound(int n, double r) {
  if (n < 2 || !(r > 1.0 && r < n)) throw std::invalid_argument("public goods game needs 1 < r < n");
  return 1.0 - n / (r * (n - 1));
}

double pgg_threshold(int n, double r, double s) {
  if (s < pgg_slope_bound(n, r) - kTolerance) throw std::domain_error("slope below the enforceable bound");
  if (!(s <= 1.0)) throw std::domain_error("slope above 1");
  const double k = 1.0 - s;
  return (1.0 - k * (r - r / n)) / (1.0 - k * (1.0 - r / n));
}

NsdSlopeBounds nsd_slope_bounds(int n, double benefit, double cost) {
  if (n < 2 || !(cost > 0.0 && benefit > cost)) throw std::invalid_argument("snowdrift game needs benefit > cost > 0");
  return NsdSlopeBounds{1.0 - cost / (benefit * (n - 1)), true};
}

double nsd_generous_threshold(int n, double benefit, double cost, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("generous slope must lie in (0, 1]");
  const double bound = nsd_slope_bounds(n, benefit, cost).extortion_min;
  if (s > bound) return nsd_extortion_threshold(n, benefit, cost, s);
  const double k = 1.0 - s;
  return std::max(static_cast<double>(n - 1) / n, (k * benefit - cost / (n - 1)) / (k * (benefit - cost / n)));
}

double nsd_extortion_threshold(int n, double benefit, double cost, double s) {
  const double bound = nsd_slope_bounds(n, benefit, cost).extortion_min;
  if (s < bound - kTolerance) throw std::domain_error("slope below the extortion bound");
  if (!(s <= 1.0)) throw std::domain_error("slope above 1");
  const double k = 1.0 - s;
  return (k * (cost / n - cost) + cost) / (k * (benefit - cost) + cost);
}

PggNashRegions pgg_nash_regions(int n, double r) {
  PggNashRegions regions;
  regions.onset = pgg_slope_bound(n, r);
  regions.crossover = static_cast<double>(n - 2) / (n - 1);
  regions.extortion = {regions.onset, regions.crossover, regions.onset > regions.crossover};
  regions.generous = {std::max(regions.onset, regions.crossover), 1.0, false};
  regions.generous_min_delta = (n - r) * (n - 1) / ((n - 1.0) * (n - 1.0) + (r - 1.0));
  return regions;
}

std::vector<NashRow> pgg_nash_table(int n, double r, int steps) {
  if (steps < 1) throw std::invalid_argument("need at least one slope");
  const auto regions = pgg_nash_regions(n, r);
  std::vector<NashRow> rows;
  for (int k = 0; k < steps; ++k) {
    const double s = regions.onset + k * (1.0 - regions.onset) / steps;
    rows.push_back({s, pgg_threshold(n, r, s), s <= regions.crossover, s >= regions.crossover});
  }
  return rows;
}

}  // namespace zd
