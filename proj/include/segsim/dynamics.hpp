#pragma once

// Seeded best-response edge-formation protocols and the dynamic-programming
// check that myopic play is optimal against a semi-Markov acceptance
// probability.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "segsim/arm.hpp"
#include "segsim/disbm.hpp"
#include "segsim/rng.hpp"
#include "segsim/semi_markov.hpp"

namespace segsim {

enum class Protocol { P1, P2, P3 };

struct ProtocolConfig {
  Protocol protocol = Protocol::P1;
  std::size_t n_per_community = 20;
  std::size_t horizon = 20;
  std::optional<ArmConfig> arm;          // P2 only
  std::optional<SemiMarkovChain> chain;  // P3 only
  RngSeed seed;
  double gamma = 0.9;  // P3 analysis only

  static ProtocolConfig protocol1(std::size_t n, std::size_t horizon,
                                  RngSeed seed);
  static ProtocolConfig protocol2(std::size_t n, std::size_t horizon,
                                  double c, RngSeed seed);
  static ProtocolConfig protocol3(std::size_t n, std::size_t horizon,
                                  SemiMarkovChain chain, RngSeed seed);

  // Throws std::invalid_argument when the protocol's parameters are missing
  // or extra ones are present.
  void validate() const;
};

struct TraceRecord {
  std::size_t t = 0;
  double p_r = 1.0;
  double p_b = 1.0;
  std::optional<double> acceptance_probability;
  double segregation = 1.0;
  std::size_t inter_edges = 0;
  std::optional<std::size_t> recommended;
  std::optional<std::size_t> accepted;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using Trace = std::vector<TraceRecord>;

// Records t = 0 .. horizon-1. Step t >= 1: the red community re-optimizes at
// odd t and the blue one at even t; then a snapshot is sampled, the
// recommendation pass runs (P2, P3), metrics are recorded and, for P3, the
// acceptance probability makes its transition.
Trace run_protocol(const ProtocolConfig& cfg);

// t,p_r,p_b,c,segregation,inter_edges,recommended,accepted
void write_trace_csv(std::ostream& os, const Trace& trace);

struct MyopicReport {
  double myopic_value = 0.0;
  double dp_value = 0.0;
  double gap = 0.0;  // dp_value - myopic_value
  // Per chain state: the stage-payoff maximizer on the grid and the
  // closed-form equilibrium action it approximates.
  std::vector<double> myopic_actions;
  std::vector<double> nash_actions;
};

// Red player's discounted value from the chain's initial state, by backward
// induction over a grid of own actions, against a blue player that plays the
// equilibrium action of the current state. Compared with the policy that
// maximizes only the stage payoff.
MyopicReport verify_myopic_optimality(const SemiMarkovChain& chain,
                                      double gamma, std::size_t grid_size,
                                      std::size_t horizon);

}  // namespace segsim
