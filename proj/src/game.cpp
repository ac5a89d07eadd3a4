#include "zd/game.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace zd {

ActionProfile::ActionProfile(uint32_t mask, int n) : mask_(mask), n_(n) {
  if (n < 1 || n > 31 || mask >= profile_count(n)) {
    throw std::out_of_range("action profile mask out of range");
  }
}

int ActionProfile::cooperators() const { return std::popcount(mask_); }

int ActionProfile::cooperating_coplayers(int player) const {
  return cooperators() - (cooperates(player) ? 1 : 0);
}

DilemmaReport validate_dilemma(const PayoffTable& table) {
  const int n = table.n;
  if (n < 2 || table.a.size() != static_cast<size_t>(n) || table.b.size() != static_cast<size_t>(n)) {
    std::ostringstream os;
    os << "payoff table needs n >= 2 and |a| = |b| = n (n=" << n << ", |a|=" << table.a.size()
       << ", |b|=" << table.b.size() << ")";
    throw std::invalid_argument(os.str());
  }
  DilemmaReport report;
  auto fail = [&](char axiom, int z, const std::string& what) {
    report.pass = false;
    report.axiom = axiom;
    report.index = z;
    report.message = what;
    return report;
  };
  for (int z = 0; z + 1 < n; ++z) {
    if (!(table.a[z + 1] >= table.a[z]) || !(table.b[z + 1] >= table.b[z])) {
      return fail('a', z, "payoffs must be nondecreasing in the number of cooperating co-players");
    }
  }
  for (int z = 0; z + 1 < n; ++z) {
    if (!(table.b[z + 1] > table.a[z])) {
      return fail('b', z, "defectors must earn strictly more than cooperators in mixed groups");
    }
  }
  if (!(table.a[n - 1] > table.b[0])) {
    return fail('c', -1, "mutual cooperation must beat mutual defection");
  }
  return report;
}

PayoffTable public_goods(int n, double r, double c) {
  if (n < 2) throw std::invalid_argument("public goods game needs n >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("public goods game needs c > 0");
  if (!(r > 1.0 && r < n)) throw std::invalid_argument("public goods game needs 1 < r < n");
  PayoffTable t{n, std::vector<double>(n), std::vector<double>(n)};
  for (int z = 0; z < n; ++z) {
    t.a[z] = r * c * (z + 1) / n - c;
    t.b[z] = r * c * z / n;
  }
  return t;
}

PayoffTable snowdrift(int n, double benefit, double cost) {
  if (n < 2) throw std::invalid_argument("snowdrift game needs n >= 2");
  if (!(cost > 0.0 && benefit > cost)) throw std::invalid_argument("snowdrift game needs benefit > cost > 0");
  PayoffTable t{n, std::vector<double>(n), std::vector<double>(n)};
  for (int z = 0; z < n; ++z) {
    t.a[z] = benefit - cost / (z + 1);
    t.b[z] = z == 0 ? 0.0 : benefit;
  }
  return t;
}

double profile_payoff(const PayoffTable& table, const ActionProfile& profile, int player) {
  if (player < 0 || player >= table.n || profile.size() != table.n) {
    throw std::out_of_range("player index out of range");
  }
  const int z = profile.cooperating_coplayers(player);
  return profile.cooperates(player) ? table.a[z] : table.b[z];
}

double coplayer_average(const PayoffTable& table, Action key_action, int z) {
  const int n = table.n;
  if (z < 0 || z > n - 1) throw std::out_of_range("cooperating co-player count out of range");
  // Cooperating co-players see z-1 (key defects) or z (key cooperates) other
  // cooperators; a_{-1} = b_n = 0 only ever meets a zero multiplicity.
  if (key_action == Action::C) {
    return (table.a[z] * z + (n - 1 - z) * defector_payoff(table, z + 1)) / (n - 1);
  }
  return (cooperator_payoff(table, z - 1) * z + (n - 1 - z) * table.b[z]) / (n - 1);
}

}  // namespace zd
