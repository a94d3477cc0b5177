#pragma once

// Binary-opinion reinforcement learning on a random geometric graph, with an
// optional recommendation reward for disagreement.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "segsim/rng.hpp"

namespace segsim {

struct GeometricGraph {
  Eigen::Matrix2Xd positions;
  std::vector<std::vector<std::uint32_t>> neighbors;  // sorted

  std::size_t size() const { return neighbors.size(); }
  std::size_t edge_count() const;  // undirected
  bool connected(std::uint32_t a, std::uint32_t b) const;
  void connect(std::uint32_t a, std::uint32_t b);
};

// n points uniform in the unit square; edge iff distance <= r.
GeometricGraph init_geometric_graph(std::size_t n, double r, Rng& rng);

struct OpinionAgent {
  int opinion = 1;  // +1 or -1, the last expressed opinion
  double q_plus = 0.0;
  double q_minus = 0.0;

  double q(int o) const { return o > 0 ? q_plus : q_minus; }
  int preferred() const { return q_plus >= q_minus ? 1 : -1; }
};

struct OpinionConfig {
  std::size_t n_agents = 100;
  double radius = 0.175;
  double learning_rate = 0.05;
  double exploration = 0.1;
  double acceptance = 0.9;
  bool with_arm = true;
  // Not part of the reward model: also turn accepted recommendations into
  // graph edges.
  bool materialize_recommendations = false;
  std::size_t horizon = 200000;
  std::size_t record_every = 100;
  RngSeed seed;

  void validate() const;
};

struct OpinionState {
  GeometricGraph graph;
  std::vector<OpinionAgent> agents;
};

// Positions and Q values drawn from the seed; each agent starts with its
// preferred opinion.
OpinionState init_opinion_state(const OpinionConfig& cfg);

// i expresses `expressed` to neighbor j. Returns the reward i receives given
// the current opinions.
double opinion_reward(const OpinionState& state, const OpinionConfig& cfg,
                      std::uint32_t i, std::uint32_t j, int expressed);

struct Interaction {
  bool skipped = true;  // the drawn agent had no neighbor
  std::uint32_t speaker = 0;
  std::uint32_t listener = 0;
  int expressed = 0;
  double reward = 0.0;
};

// Sets i's opinion to the expression and moves Q_i(expressed) toward the
// reward.
Interaction apply_expression(OpinionState& state, const OpinionConfig& cfg,
                             std::uint32_t i, std::uint32_t j, int expressed,
                             Rng& rng);

// One micro-step: random speaker, random neighbor, epsilon-greedy expression.
Interaction step_opinion(OpinionState& state, const OpinionConfig& cfg,
                         Rng& rng);

// Communities are the two opinion classes; every undirected edge counts as
// two directed ones.
double opinion_segregation(const OpinionState& state);

struct OpinionRecord {
  std::size_t step = 0;
  double segregation = 1.0;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  double mean_q_gap = 0.0;  // mean of q_plus - q_minus

  friend bool operator==(const OpinionRecord&, const OpinionRecord&) = default;
};

using OpinionTrace = std::vector<OpinionRecord>;

OpinionRecord observe(const OpinionState& state, std::size_t step);

// Records step 0 and every record_every micro-steps through the horizon.
OpinionTrace run_opinion(const OpinionConfig& cfg);
OpinionTrace run_opinion(OpinionState state, const OpinionConfig& cfg);

// step,segregation,n_plus,n_minus,mean_q_gap
void write_opinion_csv(std::ostream& os, const OpinionTrace& trace);

}  // namespace segsim
