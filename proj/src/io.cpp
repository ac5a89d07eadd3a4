#include "zd/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>

namespace zd {
namespace {

double number_field(const nlohmann::json& j, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (j.contains(key)) {
      if (!j.at(key).is_number()) throw std::invalid_argument(std::string("game field '") + key + "' must be a number");
      return j.at(key).get<double>();
    }
  }
  throw std::invalid_argument(std::string("game spec is missing '") + *keys.begin() + "'");
}

std::vector<double> array_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::invalid_argument(std::string("custom game needs an array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw std::invalid_argument(std::string("array '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

int group_size(const nlohmann::json& j) {
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw std::invalid_argument("game spec needs an integer 'n'");
  return j.at("n").get<int>();
}

}  // namespace

GameSpec parse_game_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("game spec needs a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  GameSpec game;
  if (type == "pgg") {
    game.kind = GameKind::PublicGoods;
    game.r = number_field(j, {"r"});
    game.cost = number_field(j, {"c", "cost"});
    game.table = public_goods(group_size(j), game.r, game.cost);
  } else if (type == "nsd") {
    game.kind = GameKind::Snowdrift;
    game.benefit = number_field(j, {"benefit"});
    game.cost = number_field(j, {"cost", "c"});
    game.table = snowdrift(group_size(j), game.benefit, game.cost);
  } else if (type == "custom") {
    game.kind = GameKind::Custom;
    game.table.a = array_field(j, "a");
    game.table.b = array_field(j, "b");
    game.table.n = j.contains("n") ? group_size(j) : static_cast<int>(game.table.a.size());
  } else {
    throw std::invalid_argument("unknown game type '" + type + "'");
  }
  const auto report = validate_dilemma(game.table);
  if (!report.pass) {
    std::ostringstream os;
    os << "not a social dilemma: axiom (" << report.axiom << ") fails";
    if (report.index >= 0) os << " at z=" << report.index;
    os << ": " << report.message;
    throw std::invalid_argument(os.str());
  }
  return game;
}

GameSpec parse_game_arg(const std::string& arg) {
  if (arg.empty()) throw std::invalid_argument("empty game argument");
  if (arg.front() == '{') return parse_game_json(nlohmann::json::parse(arg));
  const auto colon = arg.find(':');
  if (colon == std::string::npos || std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open game file '" + arg + "'");
    return parse_game_json(nlohmann::json::parse(in));
  }
  // Shorthand: kind:key=value,key=value
  nlohmann::json j;
  const std::string kind = arg.substr(0, colon);
  j["type"] = kind;
  std::istringstream fields(arg.substr(colon + 1));
  std::string field;
  while (std::getline(fields, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed game field '" + field + "'");
    std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (kind == "nsd" && key == "b") key = "benefit";
    if (kind == "nsd" && key == "c") key = "cost";
    try {
      size_t used = 0;
      if (key == "n") {
        j[key] = std::stoi(value, &used);
      } else {
        j[key] = std::stod(value, &used);
      }
      if (used != value.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number in game field '" + field + "'");
    }
  }
  return parse_game_json(j);
}

nlohmann::json to_json(const GameSpec& game) {
  nlohmann::json j;
  switch (game.kind) {
    case GameKind::PublicGoods:
      j = {{"type", "pgg"}, {"n", game.table.n}, {"r", game.r}, {"c", game.cost}};
      break;
    case GameKind::Snowdrift:
      j = {{"type", "nsd"}, {"n", game.table.n}, {"benefit", game.benefit}, {"cost", game.cost}};
      break;
    case GameKind::Custom:
      j = {{"type", "custom"}, {"n", game.table.n}};
      break;
  }
  j["a"] = game.table.a;
  j["b"] = game.table.b;
  return j;
}

nlohmann::json to_json(const MemoryOneStrategy& strategy) { return nlohmann::json(strategy.p); }

nlohmann::json to_json(const SimulationReport& report) {
  auto number = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["engine"] = report.engine;
  j["payoff_mean"] = report.payoff_mean;
  j["payoff_stderr"] = report.payoff_stderr;
  j["runs"] = report.runs;
  j["seed"] = report.seed;
  j["residual"] = number(report.residual);
  j["residual_stderr"] = number(report.residual_stderr);
  j["akin_residual"] = number(report.akin_residual);
  j["akin_stderr"] = number(report.akin_stderr);
  return j;
}

uint64_t parse_seed(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty seed");
  if (text.front() == '-') throw std::invalid_argument("seed must be nonnegative");
  size_t used = 0;
  uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed seed '" + text + "'");
  }
  if (used != text.size() || (text.size() > 1 && text[0] == '0' && text[1] != 'x' && text[1] != 'X')) {
    // Reject trailing garbage and octal-looking input.
    throw std::invalid_argument("malformed seed '" + text + "'");
  }
  return seed;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // also folds -0
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << x;
  return os.str();
}

std::string format_with_fraction(double x) {
  std::string out = format_number(x);
  if (!std::isfinite(x) || x == std::round(x)) return out;
  for (int q = 2; q <= 100; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) <= 1.0e-12 * std::max(1.0, std::abs(x))) {
      std::ostringstream os;
      os << out << " (" << static_cast<long long>(p) << "/" << q << ")";
      return os.str();
    }
  }
  return out;
}

}  // namespace zd
