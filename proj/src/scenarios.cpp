#include "segsim/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "segsim/format.hpp"
#include "segsim/game.hpp"
#include "segsim/opinion.hpp"

namespace segsim {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            task(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

double tail_mean_segregation(const Trace& trace, double tail_fraction) {
  if (trace.empty()) throw std::invalid_argument("empty trace");
  const auto count = std::clamp<std::size_t>(
      static_cast<std::size_t>(
          std::ceil(tail_fraction * static_cast<double>(trace.size()))),
      1, trace.size());
  double sum = 0.0;
  for (auto it = trace.end() - static_cast<std::ptrdiff_t>(count);
       it != trace.end(); ++it)
    sum += it->segregation;
  return sum / static_cast<double>(count);
}

double max_deviation(const Trace& trace, Protocol protocol,
                     std::size_t window) {
  if (window == 0) window = trace.size();
  double worst = 0.0;
  for (const TraceRecord& r : trace) {
    if (r.t % window < window / 2) continue;
    const double ref =
        protocol == Protocol::P1 ? 1.0 : nash_action(*r.acceptance_probability);
    worst = std::max({worst, std::abs(r.p_r - ref), std::abs(r.p_b - ref)});
  }
  return worst;
}

std::vector<SweepRow> sweep_acceptance(std::size_t n, std::size_t horizon,
                                       const std::vector<double>& c_values,
                                       std::size_t seeds,
                                       std::uint64_t base_seed,
                                       double tail_fraction,
                                       unsigned threads) {
  if (seeds == 0) throw std::invalid_argument("sweep needs at least one seed");
  std::vector<double> tails(c_values.size() * seeds);
  parallel_for(tails.size(), threads, [&](std::size_t k) {
    const double c = c_values[k / seeds];
    const RngSeed seed{base_seed + k % seeds};
    tails[k] = tail_mean_segregation(
        run_protocol(ProtocolConfig::protocol2(n, horizon, c, seed)),
        tail_fraction);
  });
  std::vector<SweepRow> rows;
  for (std::size_t ci = 0; ci < c_values.size(); ++ci) {
    double sum = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) sum += tails[ci * seeds + s];
    rows.push_back({c_values[ci], sum / static_cast<double>(seeds),
                    nash_action(c_values[ci])});
  }
  return rows;
}

std::vector<BenchRow> bench_arm(const std::vector<std::size_t>& sizes,
                                double c, std::size_t batches,
                                std::uint64_t seed) {
  const ArmConfig arm(c);
  const double p = nash_action(c);
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    Rng graph_rng = make_stream(RngSeed{seed}, Stream::Graph, n);
    const DirectedGraph g =
        sample_snapshot(block_matrix(StrategyPair(p, p), n), n, graph_rng);

    BenchRow row;
    row.n = n;
    row.pairs = 2 * n * n;
    {
      Rng rng = make_stream(RngSeed{seed}, Stream::Arm, n);
      const RecommendationOutcome out = run_arm(g, arm, rng);
      row.recommended = out.recommended.size();
      row.accepted = out.accepted.size();
    }

    // Repeat passes until a batch lasts long enough to time reliably.
    std::size_t reps = 1;
    while (true) {
      Rng rng = make_stream(RngSeed{seed}, Stream::Arm, n);
      const auto start = Clock::now();
      for (std::size_t r = 0; r < reps; ++r) run_arm(g, arm, rng);
      const std::chrono::duration<double> took = Clock::now() - start;
      if (took.count() >= 0.02 || reps >= (1u << 20)) break;
      reps *= 2;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < std::max<std::size_t>(batches, 1); ++b) {
      Rng rng = make_stream(RngSeed{seed}, Stream::Arm, n);
      const auto start = Clock::now();
      for (std::size_t r = 0; r < reps; ++r) run_arm(g, arm, rng);
      const std::chrono::duration<double> took = Clock::now() - start;
      best = std::min(best, took.count() / static_cast<double>(reps));
    }
    row.seconds = best;
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct Outputs {
  fs::path dir;
  std::string stem;

  fs::path path(const std::string& suffix) const {
    return dir / (stem + suffix);
  }
};

void write_file(const fs::path& path, const std::string& content,
                RunSummary& summary) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << content;
  os.close();
  if (!os) throw std::runtime_error("failed writing " + path.string());
  summary.files.push_back(path);
}

// Rounded to the 9 significant digits used in every output file.
double rounded(double x) { return std::stod(format_float(x)); }

std::string summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["scenario"] = s.scenario;
  j["kind"] = to_string(s.kind);
  j["seed"] = s.seed;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    j[key] = v ? nlohmann::json(rounded(*v)) : nlohmann::json(nullptr);
  };
  opt("final_p_r", s.final_p_r);
  opt("final_p_b", s.final_p_b);
  opt("final_segregation", s.final_segregation);
  opt("reference", s.reference);
  opt("max_deviation", s.max_deviation);
  for (const auto& [key, value] : s.extras) j["extras"][key] = rounded(value);
  return j.dump(2) + "\n";
}

SemiMarkovChain chain_from(const ScenarioSpec& spec) {
  return SemiMarkovChain(spec.list("states"), spec.matrix("transitions"),
                         spec.count("holding_time"),
                         spec.count("initial_state"));
}

void summarize_trace(const Trace& trace, Protocol protocol,
                     std::size_t window, RunSummary& s) {
  const TraceRecord& last = trace.back();
  s.final_p_r = last.p_r;
  s.final_p_b = last.p_b;
  s.final_segregation = last.segregation;
  s.reference = protocol == Protocol::P1
                    ? 1.0
                    : nash_equilibrium(*last.acceptance_probability)
                          .strategy.red();
  s.max_deviation = max_deviation(trace, protocol, window);
}

void run_protocol_scenario(const ScenarioSpec& spec, RunSummary& s,
                           const Outputs& out) {
  const std::size_t n = spec.count("n");
  const std::size_t horizon = spec.count("horizon");
  const RngSeed seed{s.seed};
  ProtocolConfig cfg;
  std::size_t window = 0;
  switch (spec.kind) {
    case ScenarioKind::Protocol1:
      cfg = ProtocolConfig::protocol1(n, horizon, seed);
      break;
    case ScenarioKind::Protocol2:
      cfg = ProtocolConfig::protocol2(n, horizon, spec.real("c"), seed);
      break;
    default:
      cfg = ProtocolConfig::protocol3(n, horizon, chain_from(spec), seed);
      window = cfg.chain->holding_time();
      break;
  }
  const Trace trace = run_protocol(cfg);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  write_file(out.path(".csv"), csv.str(), s);
  summarize_trace(trace, cfg.protocol, window, s);
}

}  // namespace

RunSummary run_scenario(const ScenarioSpec& spec, const RunOptions& options) {
  const auto start = Clock::now();
  RunSummary s;
  s.scenario = spec.name;
  s.kind = spec.kind;
  s.seed = options.seed.value_or(spec.seed);

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " +
                             options.out_dir.string() + ": " + ec.message());
  const Outputs out{options.out_dir, spec.output_path};
  std::ostringstream csv;
  std::ostringstream timing;
  timing << "item,seconds\n";

  switch (spec.kind) {
    case ScenarioKind::Nash: {
      const EquilibriumResult eq = nash_equilibrium(spec.real("c"));
      csv << "c,p_r,p_b,regime\n"
          << format_float(eq.acceptance_probability) << ','
          << format_float(eq.strategy.red()) << ','
          << format_float(eq.strategy.blue()) << ','
          << (eq.regime == Regime::Segregation ? "segregation" : "integration")
          << '\n';
      write_file(out.path(".csv"), csv.str(), s);
      s.final_p_r = eq.strategy.red();
      s.final_p_b = eq.strategy.blue();
      s.reference = nash_action(spec.real("c"));
      s.max_deviation = 0.0;
      break;
    }
    case ScenarioKind::Protocol1:
    case ScenarioKind::Protocol2:
    case ScenarioKind::Protocol3:
      run_protocol_scenario(spec, s, out);
      break;
    case ScenarioKind::SweepC: {
      const auto rows = sweep_acceptance(
          spec.count("n"), spec.count("horizon"), spec.list("c_values"),
          spec.count("seeds"), s.seed, spec.real("tail_fraction"),
          options.threads);
      csv << "c,mean_tail_segregation,equilibrium\n";
      for (const SweepRow& r : rows)
        csv << format_float(r.c) << ',' << format_float(r.mean_tail_segregation)
            << ',' << format_float(r.equilibrium) << '\n';
      write_file(out.path(".csv"), csv.str(), s);
      s.final_segregation = rows.back().mean_tail_segregation;
      s.reference = rows.back().equilibrium;
      break;
    }
    case ScenarioKind::Opinion: {
      OpinionConfig cfg;
      cfg.n_agents = spec.count("n_agents");
      cfg.radius = spec.real("radius");
      cfg.learning_rate = spec.real("alpha");
      cfg.exploration = spec.real("epsilon");
      cfg.acceptance = spec.real("c");
      cfg.with_arm = spec.flag("with_arm");
      cfg.materialize_recommendations = spec.flag("materialize");
      cfg.horizon = spec.count("horizon");
      cfg.record_every = spec.count("record_every");
      cfg.seed = RngSeed{s.seed};
      const OpinionTrace trace = run_opinion(cfg);
      write_opinion_csv(csv, trace);
      write_file(out.path(".csv"), csv.str(), s);
      s.final_segregation = trace.back().segregation;
      const std::size_t tail = std::max<std::size_t>(1, trace.size() / 10);
      double sum = 0.0;
      for (std::size_t k = trace.size() - tail; k < trace.size(); ++k)
        sum += trace[k].segregation;
      s.extras["tail_mean_segregation"] = sum / static_cast<double>(tail);
      s.extras["n_plus"] = static_cast<double>(trace.back().n_plus);
      s.extras["n_minus"] = static_cast<double>(trace.back().n_minus);
      break;
    }
    case ScenarioKind::BenchArm: {
      std::vector<std::size_t> sizes;
      for (double v : spec.list("sizes")) {
        if (!(v >= 1.0) || v != std::floor(v))
          throw ConfigError("sizes must be positive integers");
        sizes.push_back(static_cast<std::size_t>(v));
      }
      const auto rows =
          bench_arm(sizes, spec.real("c"), spec.count("batches"), s.seed);
      csv << "n,pairs,recommended,accepted\n";
      for (const BenchRow& r : rows) {
        csv << r.n << ',' << r.pairs << ',' << r.recommended << ','
            << r.accepted << '\n';
        timing << "n=" << r.n << ',' << format_float(r.seconds) << '\n';
      }
      write_file(out.path(".csv"), csv.str(), s);
      for (std::size_t k = 1; k < rows.size(); ++k)
        s.timings["ratio_" + std::to_string(rows[k - 1].n) + "_" +
                 std::to_string(rows[k].n)] =
            rows[k].seconds / rows[k - 1].seconds;
      break;
    }
    case ScenarioKind::VerifyMyopic: {
      const SemiMarkovChain chain = chain_from(spec);
      const MyopicReport rep =
          verify_myopic_optimality(chain, spec.real("gamma"),
                                   spec.count("grid"), spec.count("horizon"));
      csv << "state,c,myopic_action,nash_action\n";
      for (std::size_t k = 0; k < chain.size(); ++k)
        csv << k << ',' << format_float(chain.states()[k]) << ','
            << format_float(rep.myopic_actions[k]) << ','
            << format_float(rep.nash_actions[k]) << '\n';
      write_file(out.path(".csv"), csv.str(), s);
      s.extras["dp_value"] = rep.dp_value;
      s.extras["myopic_value"] = rep.myopic_value;
      s.extras["gap"] = rep.gap;
      s.reference = rep.nash_actions[chain.initial_state_index()];
      break;
    }
  }

  write_file(out.path(".summary.json"), summary_json(s), s);
  const std::chrono::duration<double> took = Clock::now() - start;
  s.wall_seconds = took.count();
  for (const auto& [key, value] : s.timings)
    timing << key << ',' << format_float(value) << '\n';
  timing << "total," << format_float(s.wall_seconds) << '\n';
  write_file(out.path(".timing.csv"), timing.str(), s);
  return s;
}

}  // namespace segsim
