#pragma once

// Named experiment runs and their output files.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segsim/config.hpp"
#include "segsim/dynamics.hpp"

namespace segsim {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed
};

struct RunSummary {
  std::string scenario;
  ScenarioKind kind = ScenarioKind::Nash;
  std::uint64_t seed = 0;
  std::optional<double> final_p_r;
  std::optional<double> final_p_b;
  std::optional<double> final_segregation;
  // Equilibrium action from nash_equilibrium, never read off a trace.
  std::optional<double> reference;
  std::optional<double> max_deviation;
  std::map<std::string, double> extras;
  // Machine-dependent measurements, written only to the timing file.
  std::map<std::string, double> timings;
  double wall_seconds = 0.0;
  std::vector<std::filesystem::path> files;
};

// Mean segregation over the last `tail_fraction` of the records (at least
// one record).
double tail_mean_segregation(const Trace& trace, double tail_fraction);

// Largest |p - equilibrium(C_t)| over both players, taken over the second
// half of every holding window (the whole horizon counts as one window when
// `window` is 0).
double max_deviation(const Trace& trace, Protocol protocol, std::size_t window);

struct SweepRow {
  double c = 0.0;
  double mean_tail_segregation = 0.0;
  double equilibrium = 0.0;
};

// Protocol 2 for every C and seeds base_seed .. base_seed + seeds - 1.
std::vector<SweepRow> sweep_acceptance(std::size_t n, std::size_t horizon,
                                       const std::vector<double>& c_values,
                                       std::size_t seeds,
                                       std::uint64_t base_seed,
                                       double tail_fraction,
                                       unsigned threads = 1);

struct BenchRow {
  std::size_t n = 0;
  double seconds = 0.0;  // fastest batch, per recommendation pass
  std::size_t pairs = 0;
  std::size_t recommended = 0;
  std::size_t accepted = 0;
};

// Times run_arm on an equilibrium snapshot of each size.
std::vector<BenchRow> bench_arm(const std::vector<std::size_t>& sizes,
                                double c, std::size_t batches,
                                std::uint64_t seed);

// Runs a scenario and writes <output>.csv, <output>.summary.json and
// <output>.timing.csv into the output directory. Only the timing file
// varies between runs with the same seed.
RunSummary run_scenario(const ScenarioSpec& spec, const RunOptions& options);

// Evaluates `task(k)` for k = 0 .. count-1 on up to `threads` threads.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace segsim
