#ifndef ZD_GAME_HPP
#define ZD_GAME_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace zd {

// Entries, margins and l-bounds closer than this are treated as equal.
inline constexpr double kTolerance = 1.0e-12;

enum class Action { C, D };

// Symmetric one-shot payoffs of an n-player dilemma.
// a[z]: cooperator payoff when z co-players cooperate, b[z]: defector payoff.
struct PayoffTable {
  int n = 0;
  std::vector<double> a;
  std::vector<double> b;
};

// Cooperator payoff a_z with the convention a_{-1} = 0.
inline double cooperator_payoff(const PayoffTable& t, int z) { return z < 0 ? 0.0 : t.a[static_cast<size_t>(z)]; }
// Defector payoff b_z with the convention b_n = 0.
inline double defector_payoff(const PayoffTable& t, int z) { return z >= t.n ? 0.0 : t.b[static_cast<size_t>(z)]; }

// Bit i set iff player i cooperates. Player 0 is the key player.
class ActionProfile {
 public:
  ActionProfile(uint32_t mask, int n);

  uint32_t mask() const { return mask_; }
  int size() const { return n_; }
  bool cooperates(int player) const { return (mask_ >> player) & 1u; }
  int cooperators() const;
  // Number of cooperators among everyone except `player`.
  int cooperating_coplayers(int player) const;

 private:
  uint32_t mask_;
  int n_;
};

inline uint32_t profile_count(int n) { return uint32_t{1} << n; }

struct DilemmaReport {
  bool pass = true;
  char axiom = 0;   // 'a', 'b' or 'c' on failure
  int index = -1;   // offending z (axiom c has none)
  std::string message;
};

// Checks monotonicity (a), defection dominance in mixed groups (b) and
// cooperation beating defection (c). Throws std::invalid_argument when the
// vectors do not have length n >= 2.
DilemmaReport validate_dilemma(const PayoffTable& table);

// Linear public goods game, 1 < r < n, c > 0.
PayoffTable public_goods(int n, double r, double c);

// Multiplayer snowdrift game, benefit > cost > 0.
PayoffTable snowdrift(int n, double benefit, double cost);

double profile_payoff(const PayoffTable& table, const ActionProfile& profile, int player);

// Average one-shot payoff of the n-1 co-players when the key player plays
// `key_action` and z co-players cooperate.
double coplayer_average(const PayoffTable& table, Action key_action, int z);

}  // namespace zd

#endif  // ZD_GAME_HPP
