#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "segsim/config.hpp"
#include "segsim/game.hpp"
#include "segsim/scenarios.hpp"

using namespace segsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "segsim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::size_t line_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SEGSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse a protocol 2 scenario with defaults") {
  const auto specs = parse_config("[scenario a]\nkind = protocol2\nseed = 1\n");
  REQUIRE(specs.size() == 1);
  const ScenarioSpec& s = specs[0];
  CHECK(s.name == "a");
  CHECK(s.kind == ScenarioKind::Protocol2);
  CHECK(s.seed == 1);
  CHECK(s.count("n") == 20);
  CHECK(s.count("horizon") == 20);
  CHECK(s.real("c") == 0.8);
  CHECK(s.output_path == "a");
}

TEST_CASE("parse edge cases") {
  CHECK(parse_config("").empty());
  CHECK(parse_config("# only a comment\n\n").empty());

  const auto specs = parse_config(
      "[scenario x]\n"
      "kind = sweep-c   # trailing comment\n"
      "c_values = 2/3, 0.8, 0.9, 1.0\n"
      "output = sweeps/x\n"
      "\n"
      "[scenario y]\n"
      "kind = protocol3\n"
      "transitions = 0,1;1,0\n"
      "states = 0.6, 0.9\n");
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].kind == ScenarioKind::SweepC);
  CHECK(specs[0].list("c_values")[0] == 2.0 / 3.0);
  CHECK(specs[0].output_path == "sweeps/x");
  CHECK(specs[1].matrix("transitions")(0, 1) == 1.0);
  CHECK(specs[1].list("states").size() == 2);
}

TEST_CASE("parse errors name the offending line") {
  CHECK_THROWS_AS(parse_config("kind = protocol9\n"), ConfigError);
  CHECK(line_of("[scenario a]\nkind = protocol9\n") == 2);
  CHECK(line_of("[scenario a]\nkind = nash\nbogus = 1\n") == 3);
  CHECK(line_of("[scenario a]\nkind = protocol2\nc = high\n") == 3);
  CHECK(line_of("[scenario a]\nkind = protocol2\nn = 2.5\n") == 3);
  CHECK(line_of("[scenario a]\nc = 0.5\n") == 1);
  CHECK(line_of("[scenario a]\nkind = nash\n[scenario a]\nkind = nash\n") == 3);
  CHECK(line_of("[scenario a]\nkind = nash\nc = 0.5\nc = 0.6\n") == 4);
  CHECK(line_of("seed = 3\n") == 1);
  CHECK(line_of("[scenario a]\nkind = opinion\nwith_arm = maybe\n") == 3);
  CHECK(line_of("[scenario a]\nkind = nash\njust text\n") == 3);
}

TEST_CASE("every kind has a complete default spec") {
  for (ScenarioKind kind : all_kinds()) {
    const ScenarioSpec s = default_spec(kind, "d");
    CHECK(kind_from_string(to_string(kind)) == kind);
    for (const ParamSchema& p : schema(kind))
      CHECK(s.parameters.count(p.key) == 1);
  }
  CHECK_FALSE(kind_from_string("protocol9").has_value());
  CHECK(kind_from_string("bench-arm") == ScenarioKind::BenchArm);
}

TEST_CASE("nash scenario reports the equilibrium") {
  const fs::path dir = scratch_dir("nash");
  const RunSummary s =
      run_scenario(default_spec(ScenarioKind::Nash, "nash"), {dir, 1, {}});
  CHECK(s.final_p_r == 0.75);
  CHECK(s.final_p_b == 0.75);
  CHECK(s.reference == 0.75);
  CHECK(slurp(dir / "nash.csv") == "c,p_r,p_b,regime\n0.8,0.75,0.75,integration\n");
  const auto j = nlohmann::json::parse(slurp(dir / "nash.summary.json"));
  CHECK(j["reference"] == 0.75);
  CHECK(j["kind"] == "nash");
  CHECK(fs::exists(dir / "nash.timing.csv"));
}

TEST_CASE("protocol 1 scenario ends segregated") {
  const fs::path dir = scratch_dir("p1");
  const RunSummary s =
      run_scenario(default_spec(ScenarioKind::Protocol1, "p1"), {dir, 1, {}});
  CHECK(s.final_p_r == 1.0);
  CHECK(s.final_p_b == 1.0);
  CHECK(s.final_segregation == 1.0);
}

TEST_CASE("protocol 2 scenario converges") {
  const fs::path dir = scratch_dir("p2");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunSummary s = run_scenario(
        default_spec(ScenarioKind::Protocol2, "p2"), {dir, 1, seed});
    CHECK(s.seed == seed);
    CHECK(s.reference == 0.75);
    REQUIRE(s.max_deviation.has_value());
    CHECK(*s.max_deviation <= 1e-3);
  }
}

TEST_CASE("sweep rows carry the closed-form equilibrium") {
  const fs::path dir = scratch_dir("sweep");
  ScenarioSpec spec = default_spec(ScenarioKind::SweepC, "sweep");
  set_parameter(spec, "c_values", "2/3, 0.8, 0.9, 1.0");
  set_parameter(spec, "seeds", "4");
  const RunSummary s = run_scenario(spec, {dir, 2, {}});
  CHECK(s.reference == doctest::Approx(nash_action(1.0)).epsilon(1e-15));

  const auto rows = sweep_acceptance(20, 20, {2.0 / 3.0, 0.8, 0.9, 1.0}, 4,
                                     spec.seed, 0.5, 2);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& r : rows)
    CHECK(r.equilibrium == 1.0 / (3.0 * r.c) + 1.0 / 3.0);

  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "c,mean_tail_segregation,equilibrium");
  int count = 0;
  while (std::getline(csv, line)) ++count;
  CHECK(count == 4);
}

TEST_CASE("threaded sweeps match the serial result") {
  const auto serial = sweep_acceptance(10, 20, {0.6, 0.9}, 6, 3, 0.5, 1);
  const auto threaded = sweep_acceptance(10, 20, {0.6, 0.9}, 6, 3, 0.5, 4);
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t k = 0; k < serial.size(); ++k)
    CHECK(serial[k].mean_tail_segregation == threaded[k].mean_tail_segregation);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t k) { hits[k]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t k) {
                                 if (k == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("reruns produce identical files") {
  for (ScenarioKind kind : all_kinds()) {
    ScenarioSpec spec = default_spec(kind, "same");
    if (kind == ScenarioKind::Protocol3) set_parameter(spec, "horizon", "300");
    if (kind == ScenarioKind::SweepC) set_parameter(spec, "seeds", "3");
    if (kind == ScenarioKind::Opinion) set_parameter(spec, "horizon", "20000");
    if (kind == ScenarioKind::BenchArm) {
      set_parameter(spec, "sizes", "20, 40");
      set_parameter(spec, "batches", "1");
    }
    const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
    run_scenario(spec, {a, 2, {}});
    run_scenario(spec, {b, 2, {}});
    for (const char* suffix : {".csv", ".summary.json"}) {
      const std::string fa = slurp(a / (std::string("same") + suffix));
      CHECK_MESSAGE(!fa.empty(), to_string(kind));
      CHECK_MESSAGE(fa == slurp(b / (std::string("same") + suffix)),
                    to_string(kind));
    }
  }
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch_dir("cli");
  const std::string out = " --out-dir " + dir.string();
  CHECK(run_cli("nash" + out) == 0);
  CHECK(fs::exists(dir / "nash.summary.json"));
  CHECK(run_cli("protocol2 --set horizon=12 --name short" + out) == 0);
  CHECK(fs::exists(dir / "short.csv"));
  CHECK(run_cli("protocol2 --set bogus=1" + out) == 2);
  CHECK(run_cli("nash --set c=2" + out) == 2);

  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "[scenario x]\nkind = protocol9\n";
  CHECK(run_cli("run " + bad.string() + out) == 2);
  const fs::path good = dir / "good.cfg";
  std::ofstream(good) << "[scenario g]\nkind = protocol1\nhorizon = 5\n";
  CHECK(run_cli("run " + good.string() + out) == 0);
  CHECK(fs::exists(dir / "g.csv"));
  CHECK(run_cli("run " + (dir / "missing.cfg").string() + out) != 0);

  CHECK(run_cli("nash --out-dir /proc/segsim_cannot_write") == 1);
}
