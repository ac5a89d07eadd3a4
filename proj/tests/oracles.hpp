#ifndef ZD_TESTS_ORACLES_HPP
#define ZD_TESTS_ORACLES_HPP

// Test-side reference computations. None of these call into the library's
// enforceability or threshold code; they work from raw payoff vectors.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "zd/game.hpp"
#include "zd/zd_core.hpp"

namespace oracle {

using zd::PayoffRelation;
using zd::PayoffTable;

// g^i_sigma for every player i and profile sigma (bit i = player i cooperates).
inline std::vector<std::vector<double>> payoff_vectors(const PayoffTable& t) {
  const uint32_t count = uint32_t{1} << t.n;
  std::vector<std::vector<double>> g(t.n, std::vector<double>(count));
  for (uint32_t mask = 0; mask < count; ++mask) {
    const int coop = std::popcount(mask);
    for (int i = 0; i < t.n; ++i) {
      if (mask >> i & 1u) {
        g[i][mask] = t.a[coop - 1];
      } else {
        g[i][mask] = t.b[coop];
      }
    }
  }
  return g;
}

// Per-profile affine form delta p_sigma = c_sigma + phi d_sigma from the
// definition delta p = p_rep + phi [s g^0 - sum w_j g^j + (1-s) l] - (1-delta) p0.
struct AffineEntries {
  std::vector<double> c;
  std::vector<double> d;
};

inline AffineEntries affine_entries(const PayoffTable& t, const PayoffRelation& rel, double delta, double p0) {
  const auto g = payoff_vectors(t);
  const size_t count = g[0].size();
  AffineEntries e{std::vector<double>(count), std::vector<double>(count)};
  for (size_t mask = 0; mask < count; ++mask) {
    double others = 0.0;
    for (int j = 1; j < t.n; ++j) others += rel.w[j - 1] * g[j][mask];
    e.d[mask] = rel.s * g[0][mask] - others + (1.0 - rel.s) * rel.l;
    e.c[mask] = (mask & 1u ? 1.0 : 0.0) - (1.0 - delta) * p0;
  }
  return e;
}

inline std::vector<double> direct_scaled_entries(const PayoffTable& t, const PayoffRelation& rel, double phi,
                                                 double delta, double p0) {
  const auto e = affine_entries(t, rel, delta, p0);
  std::vector<double> out(e.c.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = e.c[k] + phi * e.d[k];
  return out;
}

// Whether some phi > 0 keeps every c + phi d within [0, delta], allowing
// slack `eps` on each constraint.
inline bool direct_feasible(const PayoffTable& t, const PayoffRelation& rel, double delta, double p0,
                            double eps = 1e-12) {
  const auto e = affine_entries(t, rel, delta, p0);
  double lo = 0.0;  // phi > lo (strict at 0)
  double hi = std::numeric_limits<double>::infinity();
  bool lo_strict = true;
  for (size_t k = 0; k < e.c.size(); ++k) {
    const double c = e.c[k], d = e.d[k];
    // 0 <= c + phi d <= delta
    if (std::abs(d) < 1e-14) {
      if (c < -eps || c > delta + eps) return false;
      continue;
    }
    double a = (-c - eps) / d;
    double b = (delta - c + eps) / d;
    if (d < 0) std::swap(a, b);
    if (a > lo) {
      lo = a;
      lo_strict = false;
    }
    hi = std::min(hi, b);
  }
  return lo_strict ? hi > lo : hi >= lo;
}

// Smallest delta in (0, 1) admitting some phi, by bisection over delta with
// p0 fixed; nullopt when delta = 1 - 1e-9 already fails.
inline std::optional<double> direct_threshold(const PayoffTable& t, const PayoffRelation& rel, double p0) {
  double hi = 1.0 - 1e-9;
  if (!direct_feasible(t, rel, hi, p0)) return std::nullopt;
  double lo = 0.0;
  if (direct_feasible(t, rel, 1e-12, p0)) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (direct_feasible(t, rel, mid, p0) ? hi : lo) = mid;
  }
  return hi;
}

// Key-cooperates and key-defects margin extremes by enumerating every profile.
struct Extremes {
  double c_max = -1e300, c_min = 1e300, d_max = -1e300, d_min = 1e300;
};

inline Extremes profile_extremes(const PayoffTable& t, const PayoffRelation& rel) {
  const auto e = affine_entries(t, rel, 0.5, 0.0);
  Extremes x;
  for (size_t mask = 0; mask < e.d.size(); ++mask) {
    if (mask & 1u) {
      x.c_max = std::max(x.c_max, -e.d[mask]);
      x.c_min = std::min(x.c_min, -e.d[mask]);
    } else {
      x.d_max = std::max(x.d_max, e.d[mask]);
      x.d_min = std::min(x.d_min, e.d[mask]);
    }
  }
  return x;
}

// Sum of the z smallest / largest weights by trying every subset of size z.
inline double subset_sum(const std::vector<double>& w, int z, bool largest) {
  const int m = static_cast<int>(w.size());
  double best = largest ? -1e300 : 1e300;
  for (uint32_t mask = 0; mask < (uint32_t{1} << m); ++mask) {
    if (std::popcount(mask) != z) continue;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      if (mask >> k & 1u) sum += w[k];
    }
    best = largest ? std::max(best, sum) : std::min(best, sum);
  }
  return best;
}

// Mean discounted distribution by summing (1-delta) delta^t v(t) directly.
inline std::vector<double> power_series_distribution(const std::vector<zd::MemoryOneStrategy>& players, double delta,
                                                     int rounds = 400) {
  const int n = static_cast<int>(players.size());
  const uint32_t count = uint32_t{1} << n;
  auto step = [&](const std::vector<double>& coop, std::vector<double>& dist) {
    for (uint32_t to = 0; to < count; ++to) {
      double pr = 1.0;
      for (int i = 0; i < n; ++i) pr *= (to >> i & 1u) ? coop[i] : 1.0 - coop[i];
      dist[to] = pr;
    }
  };
  std::vector<double> current(count), next(count), mean(count, 0.0), coop(n), row(count);
  for (int i = 0; i < n; ++i) coop[i] = players[i].p0;
  step(coop, current);
  double weight = 1.0 - delta;
  for (int t = 0; t < rounds; ++t) {
    for (uint32_t k = 0; k < count; ++k) mean[k] += weight * current[k];
    std::fill(next.begin(), next.end(), 0.0);
    for (uint32_t from = 0; from < count; ++from) {
      if (current[from] == 0.0) continue;
      for (int i = 0; i < n; ++i) coop[i] = players[i].p[from];
      step(coop, row);
      for (uint32_t to = 0; to < count; ++to) next[to] += current[from] * row[to];
    }
    current.swap(next);
    weight *= delta;
  }
  return mean;
}

// Enforceable set for two players, in prisoner's dilemma notation.
inline bool two_player_enforceable(double T, double R, double P, double S, double s, double l) {
  if (!(s > -1.0 && s < 1.0)) return false;
  const double lower = std::max(P, (S - s * T) / (1.0 - s));
  const double upper = std::min(R, (T - s * S) / (1.0 - s));
  return lower <= l && l <= upper && lower < upper;
}

// Random table satisfying the dilemma axioms, by sorted rejection sampling.
inline PayoffTable random_dilemma(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (;;) {
    PayoffTable t{n, std::vector<double>(n), std::vector<double>(n)};
    for (auto& x : t.a) x = u(rng);
    for (auto& x : t.b) x = u(rng);
    std::sort(t.a.begin(), t.a.end());
    std::sort(t.b.begin(), t.b.end());
    if (zd::validate_dilemma(t).pass) return t;
  }
}

inline std::vector<double> random_weights(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n - 1);
  double sum = 0.0;
  for (auto& x : w) sum += (x = e(rng));
  for (auto& x : w) x /= sum;
  return w;
}

// Random (s, l, w): slope above -min w, baseline within the payoff range
// widened by 10% on each side.
inline PayoffRelation random_relation(const PayoffTable& t, std::mt19937_64& rng) {
  PayoffRelation rel;
  rel.w = random_weights(t.n, rng);
  const double wmin = *std::min_element(rel.w.begin(), rel.w.end());
  std::uniform_real_distribution<double> su(-wmin, 1.0);
  rel.s = su(rng);
  const double lo = t.b.front(), hi = t.a.back(), pad = 0.1 * (hi - lo);
  std::uniform_real_distribution<double> lu(lo - pad, hi + pad);
  rel.l = lu(rng);
  return rel;
}

inline zd::MemoryOneStrategy random_memory_one(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  zd::MemoryOneStrategy m{std::vector<double>(uint32_t{1} << n), u(rng)};
  for (auto& p : m.p) p = u(rng);
  return m;
}

}  // namespace oracle

#endif  // ZD_TESTS_ORACLES_HPP
