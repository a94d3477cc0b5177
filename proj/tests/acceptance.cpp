// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "segsim/config.hpp"
#include "segsim/disbm.hpp"
#include "segsim/dynamics.hpp"
#include "segsim/game.hpp"
#include "segsim/opinion.hpp"
#include "segsim/scenarios.hpp"
#include "segsim/utility.hpp"

using namespace segsim;
namespace fs = std::filesystem;

namespace {

unsigned threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome closed_form_equilibria() {
  bool ok = nash_equilibrium(0.8).strategy == StrategyPair(0.75, 0.75);
  double worst = 0.0;
  for (double c : {2.0 / 3.0, 0.7, 0.8, 0.9, 1.0}) {
    const auto eq = nash_equilibrium(c);
    const double p = 1.0 / (3.0 * c) + 1.0 / 3.0;
    worst = std::max({worst, std::abs(eq.strategy.red() - p),
                      std::abs(eq.strategy.blue() - p)});
    ok = ok && eq.regime == Regime::Integration;
  }
  for (double c : {0.1, 0.3, 0.5}) {
    const auto eq = nash_equilibrium(c);
    ok = ok && eq.strategy == StrategyPair(1.0, 1.0) &&
         eq.regime == Regime::Segregation;
  }
  ok = ok && worst <= 1e-12;
  return {ok, fmt("max |p - 1/(3C) - 1/3| = %.3g", worst)};
}

Outcome protocol_one_segregation() {
  std::vector<int> bad(100, 0);
  parallel_for(100, threads(), [&](std::size_t k) {
    const Trace tr =
        run_protocol(ProtocolConfig::protocol1(20, 20, {std::uint64_t(k)}));
    for (const auto& rec : tr)
      if (rec.t >= 2 && (rec.p_r != 1.0 || rec.p_b != 1.0 ||
                         rec.inter_edges != 0 || rec.segregation != 1.0))
        bad[k] = 1;
  });
  const int failures = std::count(bad.begin(), bad.end(), 1);
  return {failures == 0, fmt("%d of 100 seeds left (1, 1) after t = 2", failures)};
}

Outcome protocol_two_convergence() {
  const double target = 0.75;
  std::vector<double> worst(100, 0.0);
  parallel_for(100, threads(), [&](std::size_t k) {
    const Trace tr = run_protocol(
        ProtocolConfig::protocol2(20, 20, 0.8, {std::uint64_t(k)}));
    for (const auto& rec : tr)
      if (rec.t >= 10)
        worst[k] = std::max({worst[k], std::abs(rec.p_r - target),
                             std::abs(rec.p_b - target)});
  });
  const double m = *std::max_element(worst.begin(), worst.end());
  return {m <= 1e-3, fmt("max deviation from 0.75 for t >= 10: %.3g", m)};
}

Outcome sweep_monotonicity() {
  const std::vector<double> cs{0.6, 0.7, 0.8, 0.9, 1.0};
  const auto rows = sweep_acceptance(20, 20, cs, 50, 1, 0.5, threads());
  bool ok = true;
  std::string detail = "tail segregation:";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    detail += fmt(" C=%.1f:%.4f", rows[k].c, rows[k].mean_tail_segregation);
    if (k > 0)
      ok = ok && rows[k].mean_tail_segregation <
                     rows[k - 1].mean_tail_segregation;
  }
  return {ok, detail};
}

Outcome expected_utility_consistency() {
  struct Point {
    double pr, pb, c;
  };
  const std::vector<Point> grid{
      {0.75, 0.75, 0.8}, {0.5, 0.9, 0.8}, {0.9, 0.3, 0.8}, {0.2, 0.6, 0.8},
      {1.0, 1.0, 0.3},   {0.6, 0.4, 0.3}, {0.3, 0.95, 0.3}, {0.85, 0.15, 0.3},
      {2.0 / 3, 2.0 / 3, 1.0}, {0.4, 0.7, 1.0}, {1.0, 0.5, 1.0},
      {0.1, 0.1, 1.0}};
  const std::size_t n = 50;
  const int samples = 10000;
  std::vector<double> score(grid.size(), 0.0);  // deviation / tolerance
  parallel_for(grid.size(), threads(), [&](std::size_t k) {
    const Point& pt = grid[k];
    const StrategyPair s(pt.pr, pt.pb);
    const auto m = block_matrix(s, n);
    Rng rng = make_stream(RngSeed{1000 + k}, Stream::Graph);
    double sum[2] = {0, 0}, sq[2] = {0, 0};
    for (int i = 0; i < samples; ++i) {
      const DirectedGraph g = sample_snapshot(m, n, rng);
      const Eigen::VectorXd u = realized_utilities_arm(g, ArmConfig(pt.c));
      const double means[2] = {u.head(n).mean(), u.tail(n).mean()};
      for (int r = 0; r < 2; ++r) {
        sum[r] += means[r];
        sq[r] += means[r] * means[r];
      }
    }
    for (int r = 0; r < 2; ++r) {
      const double mean = sum[r] / samples;
      const double sd = std::sqrt(std::max(0.0, sq[r] / samples - mean * mean));
      const double expect = expected_utility_arm(
          s, pt.c, r == 0 ? Player::Red : Player::Blue);
      const double tol = 3.0 * sd / std::sqrt(double(samples)) + 2.0 / n;
      score[k] = std::max(score[k], std::abs(mean - expect) / tol);
    }
  });
  const double worst = *std::max_element(score.begin(), score.end());
  return {worst <= 1.0,
          fmt("12 points, worst |MC - closed form| = %.3f of tolerance", worst)};
}

Outcome submodularity() {
  const StrategyPair points[] = {
      {0.5, 0.5}, {0.3, 0.7}, {0.6, 0.4}, {0.2, 0.2}, {0.8, 0.9}};
  double worst = 0.0;
  for (double c : {0.2, 0.8})
    for (const StrategyPair& s : points)
      worst = std::max(worst, std::abs(cross_partial(c, s, 1e-4) + c));
  return {worst <= 1e-6, fmt("max |d2U + C| = %.3g", worst)};
}

Outcome iterated_dominance_check() {
  const auto seq = iterated_dominance(0.8, 60);
  const bool second = seq[1] == Interval{0.625, 0.8125};
  const double err = std::max(std::abs(seq.back().low - 0.75),
                              std::abs(seq.back().high - 0.75));
  return {second && err <= 1e-9,
          fmt("iteration 2 = [%.17g, %.17g], iteration 60 error %.3g",
              seq[1].low, seq[1].high, err)};
}

Outcome protocol_three_tracking() {
  Eigen::MatrixXd p(3, 3);
  p << 0, 0.5, 0.5, 0.5, 0, 0.5, 0.5, 0.5, 0;
  const int seeds = 20;
  std::vector<double> worst(seeds, 0.0);
  std::vector<int> visited(seeds, 0);
  parallel_for(seeds, threads(), [&](std::size_t k) {
    SemiMarkovChain chain({0.6, 0.8, 1.0}, p, 100, 1);
    const Trace tr = run_protocol(
        ProtocolConfig::protocol3(20, 1000, chain, {std::uint64_t(k + 1)}));
    for (const auto& rec : tr) {
      if (rec.t % 100 < 10) continue;
      const double target = nash_action(*rec.acceptance_probability);
      worst[k] = std::max({worst[k], std::abs(rec.p_r - target),
                           std::abs(rec.p_b - target)});
    }
    for (std::size_t t = 100; t < tr.size(); t += 100)
      visited[k] += tr[t].acceptance_probability !=
                    tr[t - 1].acceptance_probability;
  });
  const double m = *std::max_element(worst.begin(), worst.end());
  const int jumps = std::accumulate(visited.begin(), visited.end(), 0);
  return {m <= 1e-3,
          fmt("%d seeds, %d state changes, max deviation at window step >= 10: "
              "%.3g",
              seeds, jumps, m)};
}

Outcome myopic_optimality() {
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.4, 0.6;
  const SemiMarkovChain chain({0.6, 0.9}, p, 1, 0);
  const auto rep = verify_myopic_optimality(chain, 0.9, 201, 50);
  const auto zero = verify_myopic_optimality(chain, 0.0, 201, 50);
  const double rel = rep.gap / std::abs(rep.dp_value);
  return {rel <= 1e-3 && zero.gap == 0.0,
          fmt("relative gap %.3g at gamma = 0.9, gap %.3g at gamma = 0", rel,
              zero.gap)};
}

double tail_segregation(const OpinionTrace& tr) {
  const std::size_t tail = std::max<std::size_t>(1, tr.size() / 10);
  double sum = 0.0;
  for (std::size_t k = tr.size() - tail; k < tr.size(); ++k)
    sum += tr[k].segregation;
  return sum / double(tail);
}

Outcome opinion_validation() {
  const int seeds = 20;
  std::vector<double> with(seeds), without(seeds);
  parallel_for(2 * seeds, threads(), [&](std::size_t k) {
    OpinionConfig cfg;
    cfg.seed = {std::uint64_t(k / 2)};
    cfg.with_arm = k % 2 == 0;
    const double s = tail_segregation(run_opinion(cfg));
    (cfg.with_arm ? with : without)[k / 2] = s;
  });
  double mean_with = 0.0, mean_without = 0.0;
  int wins = 0;
  for (int k = 0; k < seeds; ++k) {
    mean_with += with[k] / seeds;
    mean_without += without[k] / seeds;
    wins += with[k] < without[k];
  }
  return {mean_with < mean_without && wins >= 18,
          fmt("mean tail segregation %.4f with ARM vs %.4f without, ARM lower "
              "in %d/20 paired seeds",
              mean_with, mean_without, wins)};
}

Outcome arm_complexity() {
  const auto rows = bench_arm({100, 200, 400, 800}, 0.8, 5, 1);
  bool ok = true;
  std::string detail = "doubling ratios:";
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double ratio = rows[k].seconds / rows[k - 1].seconds;
    detail += fmt(" %zu->%zu: %.2f", rows[k - 1].n, rows[k].n, ratio);
    ok = ok && ratio >= 3.0 && ratio <= 6.0;
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "segsim_acceptance";
  fs::remove_all(root);
  int compared = 0, differing = 0;
  std::string which;
  for (ScenarioKind kind : all_kinds()) {
    const ScenarioSpec spec = default_spec(kind, to_string(kind));
    const fs::path a = root / "a", b = root / "b";
    const RunSummary ra = run_scenario(spec, {a, threads(), {}});
    run_scenario(spec, {b, threads(), {}});
    for (const fs::path& file : ra.files) {
      const std::string name = file.filename().string();
      if (name.ends_with(".timing.csv")) continue;
      ++compared;
      if (slurp(a / name) != slurp(b / name)) {
        ++differing;
        which += " " + name;
      }
    }
  }
  fs::remove_all(root);
  return {differing == 0 && compared == 2 * int(all_kinds().size()),
          fmt("%d files compared, %d differ", compared, differing) + which};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form equilibria", closed_form_equilibria},
      {"protocol 1 segregation", protocol_one_segregation},
      {"protocol 2 convergence", protocol_two_convergence},
      {"acceptance sweep monotonicity", sweep_monotonicity},
      {"expected utility consistency", expected_utility_consistency},
      {"submodularity", submodularity},
      {"iterated dominance", iterated_dominance_check},
      {"protocol 3 tracking", protocol_three_tracking},
      {"myopic optimality", myopic_optimality},
      {"opinion validation", opinion_validation},
      {"recommendation pass scaling", arm_complexity},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> took =
        std::chrono::steady_clock::now() - start;
    failed += !out.pass;
    std::printf("%s criterion %2zu %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL",
                k + 1, criteria[k].first, out.detail.c_str(), took.count());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
