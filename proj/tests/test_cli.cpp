#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "geophase/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("geophase_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GEOPHASE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start + 1, end - start);
}

}  // namespace

TEST_CASE("cycle experiment: final row returns inventory and quote, banks r*k^2") {
  TempDir tmp("cycle");
  REQUIRE(run_cli("cycle --out " + (tmp.path / "out").string()) == 0);
  const json stats = json::parse(slurp(tmp.path / "out" / "stats.json"));
  CHECK(std::abs(stats.at("phase").get<double>() - 0.1) <= 1e-12);
  CHECK(stats.at("shape_area").get<double>() == 0.0);

  // tick,u,w,y,s,z -> final row y=0, s=s0, z=phase
  std::istringstream row(last_line(slurp(tmp.path / "out" / "trajectory.csv")));
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0] == "100");
  CHECK(std::stod(cells[3]) == 0.0);
  CHECK(std::stod(cells[4]) == 100.0);
  CHECK(std::abs(std::stod(cells[5]) - 0.1) <= 1e-12);
}

TEST_CASE("sellbuy experiment also profits") {
  TempDir tmp("sellbuy");
  REQUIRE(run_cli("sellbuy --out " + (tmp.path / "out").string()) == 0);
  const json stats = json::parse(slurp(tmp.path / "out" / "stats.json"));
  CHECK(std::abs(stats.at("phase").get<double>() - 0.1) <= 1e-12);
}

TEST_CASE("montecarlo reruns are byte-identical") {
  TempDir tmp("mc");
  const std::string out = (tmp.path / "out").string();
  const std::string args =
      "montecarlo --out " + out + " --set trials=40 --set schedule.horizon=2000";
  REQUIRE(run_cli(args) == 0);
  const std::string runs1 = slurp(tmp.path / "out" / "runs.csv");
  const std::string stats1 = slurp(tmp.path / "out" / "stats.json");
  const std::string meta1 = slurp(tmp.path / "out" / "metadata.json");
  REQUIRE(run_cli(args) == 0);
  CHECK(slurp(tmp.path / "out" / "runs.csv") == runs1);
  CHECK(slurp(tmp.path / "out" / "stats.json") == stats1);
  CHECK(slurp(tmp.path / "out" / "metadata.json") == meta1);
}

TEST_CASE("config file plus --set override, both recorded in metadata") {
  TempDir tmp("cfg");
  write(tmp.path / "config.json", R"({"market": {"q": 0.02}, "cycle": {"k": 2.0}})");
  REQUIRE(run_cli("spread --config " + (tmp.path / "config.json").string() + " --set market.c=0.005 --out " +
                  (tmp.path / "out").string()) == 0);
  const json meta = json::parse(slurp(tmp.path / "out" / "metadata.json"));
  CHECK(meta.at("config").at("market").at("q").get<double>() == 0.02);
  CHECK(meta.at("config").at("market").at("c").get<double>() == 0.005);
  CHECK(meta.at("config").at("cycle").at("k").get<double>() == 2.0);
  CHECK(meta.at("overrides") == json::array({"market.c=0.005"}));
  CHECK(meta.at("artifact_version").get<std::string>() == geophase::kArtifactVersion);
  CHECK(meta.contains("rng_algorithm"));
  CHECK(meta.contains("seed_derivation"));

  const json stats = json::parse(slurp(tmp.path / "out" / "stats.json"));
  // phase = rk^2 - qk - 2c = 0.4 - 0.04 - 0.01
  CHECK(std::abs(stats.at("phase").get<double>() - 0.35) <= 1e-12);
}

TEST_CASE("unknown fields and malformed values exit with code 2") {
  TempDir tmp("bad");
  write(tmp.path / "unknown.json", R"({"marked": {"q": 0.02}})");
  CHECK(run_cli("cycle --config " + (tmp.path / "unknown.json").string()) == 2);
  write(tmp.path / "nested.json", R"({"market": {"spread": 0.02}})");
  CHECK(run_cli("cycle --config " + (tmp.path / "nested.json").string()) == 2);
  write(tmp.path / "type.json", R"({"cycle": {"t_b": 20.5}})");
  CHECK(run_cli("cycle --config " + (tmp.path / "type.json").string()) == 2);
  write(tmp.path / "parse.json", "{not json");
  CHECK(run_cli("cycle --config " + (tmp.path / "parse.json").string()) == 2);
  CHECK(run_cli("cycle --set market.unknown=1") == 2);
  CHECK(run_cli("cycle --set market.q=-0.5") == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("cycle --set cycle.t_b=90 --set cycle.t_s=30") == 2);
}

TEST_CASE("numerical precondition failures exit with code 3") {
  TempDir tmp("num");
  // tau not a multiple of dt
  CHECK(run_cli("cont-delay --set continuous.tau=0.0005001 --out " + (tmp.path / "o").string()) == 3);
}

TEST_CASE("cont-plain stats report a vanishing phase") {
  TempDir tmp("contplain");
  REQUIRE(run_cli("cont-plain --out " + (tmp.path / "out").string()) == 0);
  const json stats = json::parse(slurp(tmp.path / "out" / "stats.json"));
  CHECK(std::abs(stats.at("phase").get<double>()) <= 1e-8);
  CHECK(stats.contains("stokes_residual"));
}

TEST_CASE("cont-delayspread sweep expands lists into sweep.csv") {
  TempDir tmp("sweep");
  write(tmp.path / "sweep.json", R"({"continuous": {"q": [0.0, 0.1, 0.3]}})");
  REQUIRE(run_cli("cont-delayspread --config " + (tmp.path / "sweep.json").string() + " --out " +
                  (tmp.path / "out").string()) == 0);
  const std::string csv = slurp(tmp.path / "out" / "sweep.csv");
  CHECK(csv.rfind("r,tau,q,phase\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 4);
  CHECK_FALSE(fs::exists(tmp.path / "out" / "trajectory.csv"));
}

TEST_CASE("library-level load_config applies defaults deterministically") {
  const auto cfg = geophase::load_config("cycle", std::nullopt, {}, std::nullopt);
  CHECK(cfg.resolved.at("cycle").at("t_b").get<int>() == 20);
  CHECK(cfg.resolved.at("cycle").at("t_s").get<int>() == 80);
  CHECK(cfg.resolved.at("base_seed").get<int>() == 42);
  CHECK_THROWS_AS(geophase::load_config("cycle", std::nullopt, {"cycle.gap=oops"}, std::nullopt),
                  geophase::ConfigError);
}
