#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "zd/engine.hpp"
#include "zd/io.hpp"
#include "zd/thresholds.hpp"
#include "zd/zd_core.hpp"

namespace zd::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Globals {
  std::string game;
  std::string out;
  std::string seed = "0";
  std::string format;
};

// Thrown for bad user input; maps to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("malformed number '" + item + "'");
    }
  }
  return values;
}

// lo:hi:steps, evaluated at lo + k (hi - lo) / (steps - 1).
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(parse_list(item).at(0));
  if (parts.size() != 3) throw UsageError("range must be lo:hi:steps");
  const double lo = parts[0], hi = parts[1];
  const double steps_real = parts[2];
  const int steps = static_cast<int>(steps_real);
  if (!(lo < hi) || steps < 2 || steps != steps_real) throw UsageError("range needs lo < hi and integer steps >= 2");
  std::vector<double> points(steps);
  for (int k = 0; k < steps; ++k) points[k] = lo + k * (hi - lo) / (steps - 1);
  return points;
}

std::vector<double> points_from(const std::optional<double>& single, const std::string& range, const char* name) {
  if (single && !range.empty()) throw UsageError(std::string("give either --") + name + " or --" + name + "-range");
  if (single) return {*single};
  if (!range.empty()) return parse_range(range);
  throw UsageError(std::string("missing --") + name + " or --" + name + "-range");
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string describe(const GameSpec& game) {
  std::ostringstream os;
  switch (game.kind) {
    case GameKind::PublicGoods:
      os << "pgg n=" << game.table.n << " r=" << format_number(game.r) << " c=" << format_number(game.cost);
      break;
    case GameKind::Snowdrift:
      os << "nsd n=" << game.table.n << " b=" << format_number(game.benefit) << " c=" << format_number(game.cost);
      break;
    case GameKind::Custom:
      os << "custom n=" << game.table.n;
      break;
  }
  return os.str();
}

// Ordered key/value output, rendered as two-column CSV or a JSON object.
class Record {
 public:
  void add(const std::string& key, ordered_json value, std::optional<std::string> display = std::nullopt) {
    entries_.push_back({key, std::move(value), std::move(display)});
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      ordered_json j = ordered_json::object();
      for (const auto& e : entries_) j[e.key] = e.value;
      os << j.dump(2) << '\n';
      return;
    }
    os << "key,value\n";
    for (const auto& e : entries_) {
      std::string text;
      if (e.display) {
        text = *e.display;
      } else if (e.value.is_string()) {
        text = e.value.get<std::string>();
      } else if (e.value.is_number_float()) {
        text = format_number(e.value.get<double>());
      } else {
        text = e.value.dump();
      }
      os << csv_cell(e.key) << ',' << csv_cell(text) << '\n';
    }
  }

 private:
  struct Entry {
    std::string key;
    ordered_json value;
    std::optional<std::string> display;
  };
  std::vector<Entry> entries_;
};

ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

// Writes to --out when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

PayoffRelation make_relation(const GameSpec& game, double s, double l, const std::string& weights, bool unchecked) {
  PayoffRelation relation = PayoffRelation::equal_weights(game.table.n, s, l);
  if (!weights.empty()) relation.w = parse_list(weights);
  validate_relation(relation, game.table.n, unchecked ? WeightPolicy::Unchecked : WeightPolicy::NonNegative);
  return relation;
}

bool has_equal_weights(const PayoffRelation& relation) {
  for (double w : relation.w) {
    if (std::abs(w - relation.w.front()) > kTolerance) return false;
  }
  return true;
}

// "p/q" when x is a small fraction, else the plain number.
std::string as_fraction(double x) {
  const std::string text = format_with_fraction(x);
  const auto open = text.find(" (");
  return open == std::string::npos ? text : text.substr(open + 2, text.size() - open - 3);
}

// Explains a failed enforceability check, naming the closed-form slope bound
// for the standard games where one applies.
std::string explain(const GameSpec& game, const PayoffRelation& relation, const EnforceabilityReport& report) {
  if (!report.slope_ok || !has_equal_weights(relation)) return report.reason;
  const auto& t = game.table;
  const bool extortion = relation.l == t.b.front();
  const bool generous = relation.l == t.a.back();
  if (game.kind == GameKind::PublicGoods && (extortion || generous)) {
    const double bound = pgg_slope_bound(t.n, game.r);
    if (relation.s < bound) {
      return std::string("below ") + (extortion ? "extortion" : "generous") + " slope bound " + as_fraction(bound);
    }
  }
  if (game.kind == GameKind::Snowdrift && extortion) {
    const double bound = nsd_slope_bounds(t.n, game.benefit, game.cost).extortion_min;
    if (relation.s < bound) return "below extortion slope bound " + as_fraction(bound);
  }
  return report.reason;
}

const char* binding_name(Binding b) {
  switch (b) {
    case Binding::None: return "none";
    case Binding::Lower: return "lower";
    case Binding::Upper: return "upper";
    case Binding::Both: return "both";
  }
  return "none";
}

// ---------------------------------------------------------------- check

struct CheckOptions {
  double s = 0.0;
  double l = 0.0;
  std::string weights;
  std::optional<double> delta;
  std::optional<double> p0;
  bool unchecked = false;
};

int cmd_check(const Globals& g, const CheckOptions& o, std::ostream& out) {
  const GameSpec game = parse_game_arg(g.game);
  const auto& table = game.table;
  const PayoffRelation relation = make_relation(game, o.s, o.l, o.weights, o.unchecked);
  if (o.delta && !(*o.delta > 0.0 && *o.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  if (o.p0 && !(*o.p0 >= 0.0 && *o.p0 <= 1.0)) throw UsageError("--p0 must lie in [0, 1]");

  Record rec;
  rec.add("game", describe(game));
  rec.add("s", o.s);
  rec.add("l", o.l);
  const auto necessary = check_necessary(relation, table);
  rec.add("necessary", necessary.pass ? "pass" : necessary.violated);
  const auto report = is_enforceable(table, relation);
  rec.add("enforceable", report.enforceable);
  rec.add("l_lower", number_or_null(report.l_lower));
  rec.add("l_upper", number_or_null(report.l_upper));
  rec.add("binding", binding_name(report.binding));

  Sink sink(g.out, out);
  if (!report.enforceable) {
    rec.add("reason", explain(game, relation, report));
    rec.write(sink.stream(), g.format);
    return kInfeasible;
  }
  rec.add("p0_range", ordered_json::array({report.p0_min, report.p0_max}),
          "[" + format_number(report.p0_min) + ", " + format_number(report.p0_max) + "]");
  const auto threshold = minimal_discount_threshold(table, relation);
  rec.add("delta_tau", threshold.delta_tau, format_with_fraction(threshold.delta_tau));
  rec.add("delta_tau_p0", threshold.p0);
  rec.add("binding_term", threshold.binding_term);
  if (!o.delta) {
    rec.write(sink.stream(), g.format);
    return kOk;
  }

  const double delta = *o.delta;
  const double p0 = o.p0.value_or(threshold.p0);
  const auto interval = phi_interval(table, relation, delta, p0);
  rec.add("delta", delta);
  rec.add("p0", p0);
  rec.add("phi_feasible", !interval.empty);
  if (interval.empty) {
    rec.add("reason", "no feasible phi at this delta and p0");
    rec.write(sink.stream(), g.format);
    return kInfeasible;
  }
  rec.add("phi_lo", interval.lo);
  rec.add("phi_hi", number_or_null(interval.hi));
  const double phi = interval.midpoint();
  rec.add("phi", phi);
  const auto strategy = zd_entries(table, ZDParameters{relation, phi, delta, p0});
  std::string shown;
  for (size_t k = 0; k < strategy.p.size(); ++k) shown += (k ? " " : "") + format_number(strategy.p[k]);
  rec.add("strategy", to_json(strategy), shown);
  rec.write(sink.stream(), g.format);
  return kOk;
}

// ---------------------------------------------------------------- threshold

struct ThresholdOptions {
  std::string mode;
  std::optional<double> s;
  std::string s_range;
  std::optional<double> l;
  std::string l_range;
  std::optional<double> p0;
  std::string p0_range;
  std::string weights;
  bool oracle = false;
};

inline constexpr double kOracleStep = 0.002;

std::string cell(std::optional<double> x) { return x ? format_number(*x) : std::string(); }

std::optional<double> closed_form(const GameSpec& game, const std::string& mode, double s, bool equal_weights) {
  if (!equal_weights || !(s <= 1.0)) return std::nullopt;
  const auto& t = game.table;
  if (game.kind == GameKind::PublicGoods && s >= pgg_slope_bound(t.n, game.r) - kTolerance) {
    return pgg_threshold(t.n, game.r, s);
  }
  if (game.kind == GameKind::Snowdrift) {
    if (mode == "extortion" && s >= nsd_slope_bounds(t.n, game.benefit, game.cost).extortion_min - kTolerance) {
      return nsd_extortion_threshold(t.n, game.benefit, game.cost, s);
    }
    if (mode == "generous" && s > 0.0) return nsd_generous_threshold(t.n, game.benefit, game.cost, s);
  }
  return std::nullopt;
}

int cmd_threshold(const Globals& g, const ThresholdOptions& o, std::ostream& out) {
  const GameSpec game = parse_game_arg(g.game);
  const auto& table = game.table;
  if (o.mode != "extortion" && o.mode != "generous" && o.mode != "equalizer") {
    throw UsageError("--mode must be extortion, generous or equalizer");
  }
  const PayoffRelation base = make_relation(game, 0.0, 0.0, o.weights, false);
  const bool equal = has_equal_weights(base);

  struct Point {
    double s = 0.0, l = 0.0, p0 = 0.0;
  };
  std::vector<Point> points;
  std::string header;
  if (o.mode == "equalizer") {
    for (double l : points_from(o.l, o.l_range, "l")) {
      for (double p0 : points_from(o.p0, o.p0_range, "p0")) {
        if (!(p0 > 0.0 && p0 < 1.0)) throw UsageError("equalizer thresholds need p0 in (0, 1)");
        points.push_back({0.0, l, p0});
      }
    }
    header = "l,p0,delta_tau,binding_term,closed_form_delta";
  } else {
    for (double s : points_from(o.s, o.s_range, "s")) points.push_back({s, 0.0, 0.0});
    header = "s,delta_tau,binding_term,closed_form_delta";
  }
  if (o.oracle) header += ",oracle_delta";

  std::vector<std::string> lines(points.size());
  std::vector<char> feasible(points.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (size_t k = 0; k < points.size(); ++k) {
    const Point& pt = points[k];
    ThresholdResult result;
    PayoffRelation relation = base;
    std::optional<double> closed;
    std::optional<double> oracle_p0;
    std::string line;
    if (o.mode == "equalizer") {
      result = equalizer_threshold(table, pt.l, pt.p0, base.w);
      relation.l = pt.l;
      oracle_p0 = pt.p0;
      line = format_number(pt.l) + "," + format_number(pt.p0);
    } else {
      const bool extortion = o.mode == "extortion";
      result = extortion ? extortion_threshold(table, pt.s, base.w) : generosity_threshold(table, pt.s, base.w);
      relation.s = pt.s;
      relation.l = extortion ? table.b.front() : table.a.back();
      closed = closed_form(game, o.mode, pt.s, equal);
      line = format_number(pt.s);
    }
    line += "," + (result.feasible ? format_number(result.delta_tau) : std::string());
    line += "," + (result.feasible ? result.binding_term : std::string("infeasible"));
    line += "," + cell(closed);
    if (o.oracle) line += "," + cell(oracle_threshold(table, relation, kOracleStep, oracle_p0));
    lines[k] = line;
    feasible[k] = result.feasible;
  }

  Sink sink(g.out, out);
  auto& os = sink.stream();
  if (g.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& line : lines) rows.push_back(line);
    ordered_json j;
    j["columns"] = header;
    j["rows"] = rows;
    os << j.dump(2) << '\n';
  } else {
    os << header << '\n';
    for (const auto& line : lines) os << line << '\n';
  }
  const bool any = std::any_of(feasible.begin(), feasible.end(), [](char f) { return f != 0; });
  return any ? kOk : kInfeasible;
}

// ---------------------------------------------------------------- nash

int cmd_nash(const Globals& g, int steps, std::ostream& out) {
  const GameSpec game = parse_game_arg(g.game);
  if (game.kind != GameKind::PublicGoods) throw UsageError("nash regions are available for the public goods game only");
  const int n = game.table.n;
  const auto regions = pgg_nash_regions(n, game.r);
  const auto rows = pgg_nash_table(n, game.r, steps);

  Sink sink(g.out, out);
  auto& os = sink.stream();
  if (g.format == "json") {
    ordered_json j;
    j["game"] = describe(game);
    j["onset"] = regions.onset;
    j["crossover"] = regions.crossover;
    j["extortion_ne"] = {{"lo", regions.extortion.lo}, {"hi", regions.extortion.hi},
                         {"empty", regions.extortion.empty}};
    j["generous_ne"] = {{"lo", regions.generous.lo}, {"hi", regions.generous.hi}};
    j["generous_min_delta"] = regions.generous_min_delta;
    ordered_json table = ordered_json::array();
    for (const auto& r : rows) {
      table.push_back({{"s", r.s}, {"delta_tau", r.delta_tau}, {"extortion_ne", r.extortion_ne},
                       {"generous_ne", r.generous_ne}});
    }
    j["slopes"] = table;
    os << j.dump(2) << '\n';
    return kOk;
  }
  os << "# game: " << describe(game) << '\n';
  os << "# extortion_ne: " << (regions.extortion.empty ? "empty" : "[" + format_with_fraction(regions.extortion.lo) +
                                                                        ", " + format_with_fraction(regions.extortion.hi) + "]")
     << '\n';
  os << "# generous_ne: [" << format_with_fraction(regions.generous.lo) << ", 1)\n";
  os << "# crossover: " << format_with_fraction(regions.crossover) << '\n';
  os << "# generous_min_delta: " << format_with_fraction(regions.generous_min_delta) << '\n';
  os << "s,delta_tau,extortion_ne,generous_ne\n";
  for (const auto& r : rows) {
    os << format_number(r.s) << ',' << format_number(r.delta_tau) << ',' << int{r.extortion_ne} << ','
       << int{r.generous_ne} << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  double s = 0.0;
  double l = 0.0;
  std::string weights;
  double delta = 0.0;
  std::optional<double> p0;
  std::optional<double> phi;
  std::string opponents;
  long runs = 100000;
  std::string engine = "mc";
  bool geometric = false;
};

MemoryOneStrategy random_memory_one(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MemoryOneStrategy m{std::vector<double>(profile_count(n)), 0.0};
  for (double& p : m.p) p = unit(rng);
  m.p0 = unit(rng);
  return m;
}

// Comma-separated tokens, each optionally repeated with "*k":
// allc, alld, random:q, m1random, majority3, zd.
std::vector<Strategy> parse_opponents(const std::string& spec, int n, const MemoryOneStrategy& key, uint64_t seed) {
  std::vector<Strategy> players;
  std::mt19937_64 rng(seed);
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    int repeat = 1;
    if (const auto star = token.find('*'); star != std::string::npos) {
      try {
        repeat = std::stoi(token.substr(star + 1));
      } catch (const std::exception&) {
        throw UsageError("malformed repeat count in '" + token + "'");
      }
      token = token.substr(0, star);
      if (repeat < 1) throw UsageError("repeat count must be positive");
    }
    for (int k = 0; k < repeat; ++k) {
      const int player = static_cast<int>(players.size()) + 1;
      if (player >= n) throw UsageError("more opponents than co-players");
      if (token == "allc") {
        players.push_back(Strategy::all_c());
      } else if (token == "alld") {
        players.push_back(Strategy::all_d());
      } else if (token.rfind("random:", 0) == 0) {
        players.push_back(Strategy::random(parse_list(token.substr(7)).at(0)));
      } else if (token == "m1random") {
        players.push_back(Strategy::memory_one(random_memory_one(n, rng)));
      } else if (token == "majority3") {
        players.push_back(majority_of_last_three());
      } else if (token == "zd") {
        players.push_back(Strategy::memory_one(relabel_for_player(key, player, n)));
      } else {
        throw UsageError("unknown opponent '" + token + "'");
      }
    }
  }
  if (static_cast<int>(players.size()) != n - 1) throw UsageError("need exactly n - 1 opponents");
  return players;
}

int cmd_simulate(const Globals& g, const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  const GameSpec game = parse_game_arg(g.game);
  const auto& table = game.table;
  const uint64_t seed = parse_seed(g.seed);
  const PayoffRelation relation = make_relation(game, o.s, o.l, o.weights, false);
  if (!(o.delta > 0.0 && o.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  if (o.engine != "exact" && o.engine != "mc") throw UsageError("--engine must be exact or mc");
  if (o.runs < 1) throw UsageError("--runs must be positive");

  double p0 = 0.0;
  if (o.p0) {
    p0 = *o.p0;
  } else if (const auto t = minimal_discount_threshold(table, relation); t.feasible) {
    p0 = t.p0;
  }
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw UsageError("--p0 must lie in [0, 1]");
  const auto interval = phi_interval(table, relation, o.delta, p0);
  if (interval.empty && !o.phi) {
    err << "infeasible ZD parameters: no phi keeps every entry in [0, 1]\n";
    return kInfeasible;
  }
  MemoryOneStrategy key;
  const double phi = o.phi.value_or(interval.empty ? 0.0 : interval.midpoint());
  try {
    key = zd_entries(table, ZDParameters{relation, phi, o.delta, p0});
  } catch (const InfeasibleParameters& e) {
    err << e.what() << '\n';
    return kInfeasible;
  }

  std::vector<Strategy> players{Strategy::memory_one(key)};
  for (auto& s : parse_opponents(o.opponents, table.n, key, seed)) players.push_back(std::move(s));

  SimulationReport report;
  if (o.engine == "exact") {
    if (table.n > kMaxExactPlayers) throw UsageError("exact engine supports at most 12 players");
    for (const auto& p : players) {
      if (!p.is_memory_one()) throw UsageError("exact engine needs memory-one opponents");
    }
    report = exact_report(table, players, o.delta, relation);
    report.seed = seed;
  } else {
    MonteCarloOptions options;
    options.relation = relation;
    options.estimator = o.geometric ? Estimator::GeometricStop : Estimator::DiscountedSum;
    report = monte_carlo(table, players, o.delta, o.runs, seed, options);
  }

  Sink sink(g.out, out);
  auto& os = sink.stream();
  auto j = to_json(report);
  if (g.format == "csv") {
    Record rec;
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string shown;
      if (it->is_array()) {
        for (size_t k = 0; k < it->size(); ++k) shown += (k ? " " : "") + format_number((*it)[k].get<double>());
        rec.add(it.key(), ordered_json(*it), shown);
      } else {
        rec.add(it.key(), ordered_json(*it));
      }
    }
    rec.add("phi", phi);
    rec.add("p0", p0);
    rec.write(os, "csv");
  } else {
    j["phi"] = phi;
    j["p0"] = p0;
    j["delta"] = o.delta;
    os << j.dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- figures

int cmd_figures(const Globals& g, std::ostream& out) {
  const std::filesystem::path dir = g.out.empty() ? std::filesystem::path(".") : std::filesystem::path(g.out);
  std::filesystem::create_directories(dir);

  {
    const int n = 5;
    const double r = 2.0;
    const auto table = public_goods(n, r, 1.0);
    const auto regions = pgg_nash_regions(n, r);
    const std::vector<double> w(n - 1, 1.0 / (n - 1));
    std::ofstream f(dir / "fig1_pgg.csv");
    f << "s,delta_tau_extortion,delta_tau_generous,closed_form_delta,extortion_ne,generous_ne\n";
    for (int k = 0; k < 125; ++k) {
      const double s = 0.375 + 0.005 * k;
      const auto ext = extortion_threshold(table, s, w);
      const auto gen = generosity_threshold(table, s, w);
      f << format_number(s) << ',' << (ext.feasible ? format_number(ext.delta_tau) : "") << ','
        << (gen.feasible ? format_number(gen.delta_tau) : "") << ',' << format_number(pgg_threshold(n, r, s)) << ','
        << int{s <= regions.crossover} << ',' << int{s >= regions.crossover} << '\n';
    }
  }
  {
    const int n = 5;
    const double benefit = 2.0, cost = 1.0;
    const auto table = snowdrift(n, benefit, cost);
    const double bound = nsd_slope_bounds(n, benefit, cost).extortion_min;
    const double crossover = static_cast<double>(n - 2) / (n - 1);
    const std::vector<double> w(n - 1, 1.0 / (n - 1));
    std::ofstream f(dir / "fig2_nsd.csv");
    f << "s,delta_tau_generous,closed_form_generous,delta_tau_extortion,closed_form_extortion,generous_ne\n";
    for (int k = 1; k < 200; ++k) {
      const double s = 0.005 * k;
      const auto gen = generosity_threshold(table, s, w);
      const auto ext = extortion_threshold(table, s, w);
      f << format_number(s) << ',' << (gen.feasible ? format_number(gen.delta_tau) : "") << ','
        << format_number(nsd_generous_threshold(n, benefit, cost, s)) << ','
        << (ext.feasible ? format_number(ext.delta_tau) : "") << ','
        << (s >= bound ? format_number(nsd_extortion_threshold(n, benefit, cost, s)) : "") << ','
        << int{s >= crossover} << '\n';
    }
  }
  out << (dir / "fig1_pgg.csv").string() << '\n' << (dir / "fig2_nsd.csv").string() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zdtool: zero-determinant strategies in repeated multiplayer social dilemmas with discounting"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--game", g.game, "game: JSON file, inline JSON, or pgg:n=5,r=2,c=1 / nsd:n=5,b=2,c=1");
  app.add_option("--out", g.out, "output file (figures: output directory)");
  app.add_option("--seed", g.seed, "random seed, decimal or 0x-hex");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "decide enforceability of a payoff relation");
  check_cmd->add_option("--s", check.s, "slope")->required();
  check_cmd->add_option("--l", check.l, "baseline payoff")->required();
  check_cmd->add_option("--weights", check.weights, "co-player weights, comma separated (default equal)");
  check_cmd->add_option("--delta", check.delta, "discount factor");
  check_cmd->add_option("--p0", check.p0, "initial cooperation probability");
  check_cmd->add_flag("--unchecked-weights", check.unchecked, "allow negative weights");

  ThresholdOptions threshold;
  auto* threshold_cmd = app.add_subcommand("threshold", "threshold discount factors");
  threshold_cmd->add_option("--mode", threshold.mode, "extortion, generous or equalizer")->required();
  threshold_cmd->add_option("--s", threshold.s, "slope");
  threshold_cmd->add_option("--s-range", threshold.s_range, "lo:hi:steps");
  threshold_cmd->add_option("--l", threshold.l, "equalizer baseline payoff");
  threshold_cmd->add_option("--l-range", threshold.l_range, "lo:hi:steps");
  threshold_cmd->add_option("--p0", threshold.p0, "equalizer initial cooperation probability");
  threshold_cmd->add_option("--p0-range", threshold.p0_range, "lo:hi:steps");
  threshold_cmd->add_option("--weights", threshold.weights, "co-player weights (default equal)");
  threshold_cmd->add_flag("--oracle", threshold.oracle, "add the brute-force oracle column");

  int nash_steps = 25;
  auto* nash_cmd = app.add_subcommand("nash", "Nash-equilibrium slope regions of the public goods game");
  nash_cmd->add_option("--steps", nash_steps, "slopes in the table")->check(CLI::PositiveNumber);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "evaluate a ZD key player against opponents");
  sim_cmd->add_option("--s", sim.s, "slope")->required();
  sim_cmd->add_option("--l", sim.l, "baseline payoff")->required();
  sim_cmd->add_option("--weights", sim.weights, "co-player weights (default equal)");
  sim_cmd->add_option("--delta", sim.delta, "discount factor")->required();
  sim_cmd->add_option("--p0", sim.p0, "initial cooperation probability (default: threshold-minimizing)");
  sim_cmd->add_option("--phi", sim.phi, "ZD scale (default: midpoint of the feasible interval)");
  sim_cmd->add_option("--opponents", sim.opponents, "e.g. m1random*4 or allc,alld,majority3,zd")->required();
  sim_cmd->add_option("--runs", sim.runs, "Monte Carlo runs");
  sim_cmd->add_option("--engine", sim.engine, "exact or mc");
  sim_cmd->add_flag("--geometric", sim.geometric, "geometric stopping instead of discounted sums");

  auto* figures_cmd = app.add_subcommand("figures", "write fig1_pgg.csv and fig2_nsd.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (figures_cmd->parsed()) return cmd_figures(g, out);
    if (g.game.empty()) throw UsageError("--game is required");
    if (check_cmd->parsed()) {
      if (g.format.empty()) g.format = "csv";
      return cmd_check(g, check, out);
    }
    if (threshold_cmd->parsed()) {
      if (g.format.empty()) g.format = "csv";
      return cmd_threshold(g, threshold, out);
    }
    if (nash_cmd->parsed()) {
      if (g.format.empty()) g.format = "csv";
      return cmd_nash(g, nash_steps, out);
    }
    if (sim_cmd->parsed()) {
      if (g.format.empty()) g.format = "json";
      return cmd_simulate(g, sim, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace zd::cli
