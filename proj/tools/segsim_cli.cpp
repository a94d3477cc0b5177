// Command-line front end: one subcommand per scenario kind plus `run`.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segsim/config.hpp"
#include "segsim/format.hpp"
#include "segsim/scenarios.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr const char* kOutDirEnv = "SEGSIM_OUT_DIR";

void report(const segsim::RunSummary& s) {
  std::cout << s.scenario << " (" << segsim::to_string(s.kind)
            << ", seed " << s.seed << ")";
  if (s.final_p_r)
    std::cout << " final=(" << segsim::format_float(*s.final_p_r) << ", "
              << segsim::format_float(*s.final_p_b) << ")";
  if (s.final_segregation)
    std::cout << " segregation=" << segsim::format_float(*s.final_segregation);
  if (s.reference)
    std::cout << " reference=" << segsim::format_float(*s.reference);
  if (s.max_deviation)
    std::cout << " max_deviation=" << segsim::format_float(*s.max_deviation);
  for (const auto& [key, value] : s.extras)
    std::cout << ' ' << key << '=' << segsim::format_float(value);
  for (const auto& [key, value] : s.timings)
    std::cout << ' ' << key << '=' << segsim::format_float(value);
  std::cout << " wall=" << segsim::format_float(s.wall_seconds) << "s\n";
  for (const auto& f : s.files) std::cout << "  wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-formation game and recommendation mechanism simulator"};
  app.require_subcommand(1);

  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  auto* seed_opt =
      app.add_option("--seed", seed, "Override the scenario seed");
  app.add_option("--out-dir", out_dir,
                 std::string("Output directory (default $") + kOutDirEnv +
                     " or .)");
  app.add_option("--threads", threads, "Worker threads for multi-run kinds")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run every scenario in a file");
  run_cmd->add_option("config", config_path, "Scenario file")->required();
  run_cmd->fallthrough();

  struct KindCommand {
    segsim::ScenarioKind kind;
    CLI::App* cmd;
    std::vector<std::string> sets;
    std::string name;
  };
  std::vector<KindCommand> kinds;
  for (segsim::ScenarioKind kind : segsim::all_kinds())
    kinds.push_back({kind, nullptr, {}, {}});
  for (KindCommand& k : kinds) {
    std::string sub = segsim::to_string(k.kind);
    std::replace(sub.begin(), sub.end(), '_', '-');
    std::ostringstream help;
    help << "Run a single " << segsim::to_string(k.kind) << " scenario. Keys:";
    for (const auto& p : segsim::schema(k.kind))
      help << ' ' << p.key << '=' << p.default_text;
    k.cmd = app.add_subcommand(sub, help.str());
    k.cmd->fallthrough();
    k.cmd->add_option("--set", k.sets, "Parameter override key=value")
        ->take_all();
    k.cmd->add_option("--name", k.name, "Scenario name / output stem");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  segsim::RunOptions options;
  if (!out_dir.empty())
    options.out_dir = out_dir;
  else if (const char* env = std::getenv(kOutDirEnv); env && *env)
    options.out_dir = env;
  options.threads = threads;
  if (*seed_opt) options.seed = seed;

  std::vector<segsim::ScenarioSpec> specs;
  try {
    if (*run_cmd) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << config_path << '\n';
        return kExitConfig;
      }
      std::ostringstream text;
      text << in.rdbuf();
      specs = segsim::parse_config(text.str());
    } else {
      for (const KindCommand& k : kinds) {
        if (!*k.cmd) continue;
        segsim::ScenarioSpec spec = segsim::default_spec(
            k.kind, k.name.empty() ? segsim::to_string(k.kind) : k.name);
        for (const std::string& kv : k.sets) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos)
            throw segsim::ConfigError("--set expects key=value, got '" + kv +
                                      "'");
          segsim::set_parameter(spec, kv.substr(0, eq), kv.substr(eq + 1));
        }
        specs.push_back(std::move(spec));
      }
    }
  } catch (const segsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    for (const segsim::ScenarioSpec& spec : specs)
      report(segsim::run_scenario(spec, options));
  } catch (const segsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
