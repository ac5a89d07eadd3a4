#ifndef ZD_IO_HPP
#define ZD_IO_HPP

#include <string>

#include <json.hpp>

#include "zd/engine.hpp"
#include "zd/game.hpp"
#include "zd/zd_core.hpp"

namespace zd {

enum class GameKind { PublicGoods, Snowdrift, Custom };

struct GameSpec {
  GameKind kind = GameKind::Custom;
  PayoffTable table;
  double r = 0.0;        // public goods enhancement factor
  double benefit = 0.0;  // snowdrift benefit
  double cost = 0.0;     // contribution c (public goods) or shared cost (snowdrift)
};

// {"type": "pgg"|"nsd"|"custom", "n": .., "r"/"benefit": .., "c"/"cost": .., "a": [..], "b": [..]}
// Throws std::invalid_argument on malformed specs or tables that fail validate_dilemma.
GameSpec parse_game_json(const nlohmann::json& j);

// A path to a JSON file, inline JSON, or shorthand such as "pgg:n=5,r=2,c=1"
// and "nsd:n=5,b=2,c=1".
GameSpec parse_game_arg(const std::string& arg);

nlohmann::json to_json(const GameSpec& game);
// Entries ordered by profile mask.
nlohmann::json to_json(const MemoryOneStrategy& strategy);
nlohmann::json to_json(const SimulationReport& report);

// Decimal or 0x-prefixed hexadecimal.
uint64_t parse_seed(const std::string& text);

// 12 significant digits, '.' decimal separator.
std::string format_number(double x);
// format_number plus " (p/q)" when x is a fraction with denominator <= 100.
std::string format_with_fraction(double x);

}  // namespace zd

#endif  // ZD_IO_HPP
