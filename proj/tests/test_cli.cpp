#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = zd::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string current;
  while (std::getline(in, current)) {
    if (current == line) return true;
  }
  return false;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string current;
  while (std::getline(in, current)) out.push_back(current);
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check: enforceable extortion") {
  const auto r = run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.5", "--l", "0"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "enforceable,true"));
  CHECK(has_line(r.out, "delta_tau,0.285714285714 (2/7)"));
  CHECK(has_line(r.out, "p0_range,\"[0, 0]\""));
}

TEST_CASE("check: exclusions") {
  auto r = run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "1", "--l", "0.5"});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "reason,s < 1 required"));

  r = run({"--game", "nsd:n=5,b=2,c=1", "check", "--s", "0.8", "--l", "0"});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "reason,below extortion slope bound 7/8"));

  r = run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.3", "--l", "0"});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "reason,below extortion slope bound 3/8"));
}

TEST_CASE("check: invalid input") {
  CHECK(run({"--game", "pgg:n=5,r=6,c=1", "check", "--s", "0.5", "--l", "0"}).code == 2);
  CHECK(run({"check", "--s", "0.5", "--l", "0"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.5"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.5", "--l", "0", "--weights", "0.5,0.5"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.5", "--l", "0", "--delta", "1.5"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "--format", "xml", "check", "--s", "0.5", "--l", "0"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("check: strategy at a discount factor") {
  auto r = run({"--game", "pgg:n=5,r=2,c=1", "--format", "json", "check", "--s", "0.5", "--l", "0", "--delta", "0.5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["phi_lo"].get<double>() == doctest::Approx(1.0));
  CHECK(j["phi_hi"].get<double>() == doctest::Approx(1.0 / 0.7));
  REQUIRE(j["strategy"].size() == 32);
  for (const auto& p : j["strategy"]) {
    CHECK(p.get<double>() >= 0.0);
    CHECK(p.get<double>() <= 1.0);
  }

  r = run({"--game", "pgg:n=5,r=2,c=1", "check", "--s", "0.5", "--l", "0", "--delta", "0.25"});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "phi_feasible,false"));
}

TEST_CASE("threshold: public goods extortion sweep") {
  const auto r = run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "extortion", "--s-range", "0.375:0.75:4",
                      "--oracle"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "s,delta_tau,binding_term,closed_form_delta,oracle_delta");
  CHECK(rows[1].rfind("0.375,0,", 0) == 0);
  CHECK(rows[3] == "0.625,0.516129032258,C/C,0.516129032258,0.518");
  CHECK(rows[4] == "0.75,0.705882352941,C/C,0.705882352941,0.706");
}

TEST_CASE("threshold: snowdrift generous") {
  const auto r = run({"--game", "nsd:n=5,b=2,c=1", "threshold", "--mode", "generous", "--s", "0.5"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "0.5,0.833333333333,D/D,0.833333333333"));
  const auto flat = run({"--game", "nsd:n=5,b=2,c=1", "threshold", "--mode", "generous", "--s", "0.7"});
  CHECK(has_line(flat.out, "0.7,0.8,D/C,0.8"));
}

TEST_CASE("threshold: equalizer") {
  const auto r = run({"--game", "pgg:n=5,r=1.5,c=1", "threshold", "--mode", "equalizer", "--l", "0.25", "--p0", "0.5",
                      "--oracle"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"l,p0,delta_tau,binding_term,closed_form_delta,oracle_delta",
                                                  "0.25,0.5,0.666666666667,D/D,,0.668"});
  CHECK(run({"--game", "pgg:n=5,r=1.5,c=1", "threshold", "--mode", "equalizer", "--l", "0.25", "--p0", "1"}).code ==
        2);
}

TEST_CASE("threshold: sweep errors") {
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "extortion", "--s-range", "0.1:0.3:5"}).code == 1);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "extortion", "--s-range", "0.3:0.1:5"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "extortion", "--s-range", "0.1:0.3:1"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "extortion"}).code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "threshold", "--mode", "fair", "--s", "0.5"}).code == 2);
}

TEST_CASE("threshold: oracle column stays within one grid step") {
  const auto r = run({"--game", "nsd:n=3,b=2,c=1", "threshold", "--mode", "generous", "--s-range", "0.05:0.95:19",
                      "--oracle"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  for (size_t k = 1; k < rows.size(); ++k) {
    std::vector<std::string> cells;
    std::istringstream in(rows[k]);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 5);
    const double d = std::stod(cells[1]);
    const double o = std::stod(cells[4]);
    CHECK(o >= d - 1e-12);
    CHECK(o <= d + 0.002 + 1e-12);
  }
}

TEST_CASE("nash") {
  auto r = run({"--game", "pgg:n=5,r=2,c=1", "nash"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "# extortion_ne: [0.375 (3/8), 0.75 (3/4)]"));
  CHECK(has_line(r.out, "# generous_ne: [0.75 (3/4), 1)"));
  CHECK(has_line(r.out, "# generous_min_delta: 0.705882352941 (12/17)"));
  r = run({"--game", "pgg:n=3,r=2,c=1", "--format", "json", "nash"});
  CHECK(nlohmann::json::parse(r.out)["crossover"] == 0.5);
  r = run({"--game", "pgg:n=5,r=4.9,c=1", "--format", "json", "nash"});
  CHECK(nlohmann::json::parse(r.out)["generous_min_delta"].get<double>() == doctest::Approx(0.4 / 19.9));
  CHECK(run({"--game", "nsd:n=5,b=2,c=1", "nash"}).code == 2);
}

TEST_CASE("simulate") {
  auto r = run({"--game", "pgg:n=5,r=2,c=1", "--seed", "42", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5",
                "--opponents", "m1random*4", "--engine", "exact"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["residual"].get<double>()) < 1e-10);
  CHECK(std::abs(j["akin_residual"].get<double>()) < 1e-10);
  CHECK(j["seed"] == 42);

  r = run({"--game", "pgg:n=5,r=2,c=1", "--seed", "0x2a", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5",
           "--opponents", "allc,alld,majority3,zd", "--runs", "4000"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["runs"] == 4000);
  CHECK(std::abs(j["residual"].get<double>()) < 4.0 * j["residual_stderr"].get<double>());

  const auto again = run({"--game", "pgg:n=5,r=2,c=1", "--seed", "0x2a", "simulate", "--s", "0.5", "--l", "0",
                          "--delta", "0.5", "--opponents", "allc,alld,majority3,zd", "--runs", "4000"});
  CHECK(again.out == r.out);

  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.2", "--opponents",
             "allc*4"})
            .code == 1);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5", "--opponents",
             "allc*3"})
            .code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5", "--opponents",
             "allc*3,majority3", "--engine", "exact"})
            .code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5", "--opponents",
             "allc*3,tft"})
            .code == 2);
  CHECK(run({"--game", "pgg:n=5,r=2,c=1", "--seed", "abc", "simulate", "--s", "0.5", "--l", "0", "--delta", "0.5",
             "--opponents", "allc*4"})
            .code == 2);
}

TEST_CASE("simulate: full equalizer population") {
  const auto r = run({"--game", "pgg:n=5,r=1.5,c=1", "simulate", "--s", "0", "--l", "0.25", "--delta", "0.7", "--p0",
                      "0.5", "--opponents", "zd*4", "--engine", "exact"});
  REQUIRE(r.code == 0);
  for (const auto& pi : nlohmann::json::parse(r.out)["payoff_mean"]) CHECK(std::abs(pi.get<double>() - 0.25) < 1e-10);
}

TEST_CASE("figures and output files") {
  const auto dir = std::filesystem::temp_directory_path() / "zd_cli_figures";
  std::filesystem::remove_all(dir);
  REQUIRE(run({"--out", dir.string(), "figures"}).code == 0);
  const auto fig1 = slurp(dir / "fig1_pgg.csv");
  const auto fig2 = slurp(dir / "fig2_nsd.csv");
  CHECK(lines(fig1).size() == 126);
  CHECK(lines(fig2).size() == 200);
  CHECK(has_line(fig1, "0.375,0,0,0,1,0"));
  CHECK(has_line(fig1, "0.75,0.705882352941,0.705882352941,0.705882352941,1,1"));
  CHECK(has_line(fig2, "0.5,0.833333333333,0.833333333333,,,0"));
  CHECK(has_line(fig2, "0.875,0.8,0.8,0.8,0.8,1"));

  // Byte-stable across runs.
  REQUIRE(run({"--out", dir.string(), "figures"}).code == 0);
  CHECK(slurp(dir / "fig1_pgg.csv") == fig1);
  CHECK(slurp(dir / "fig2_nsd.csv") == fig2);

  const auto file = dir / "check.csv";
  REQUIRE(run({"--game", "pgg:n=5,r=2,c=1", "--out", file.string(), "check", "--s", "0.5", "--l", "0"}).code == 0);
  CHECK(has_line(slurp(file), "delta_tau,0.285714285714 (2/7)"));
  std::filesystem::remove_all(dir);
}
