#pragma once

// Algorithmic recommendation mechanism: inter-community link suggestions
// weighted by two-hop support, each accepted with probability C.

#include <iosfwd>
#include <vector>

#include "segsim/graph.hpp"
#include "segsim/rng.hpp"

namespace segsim {

class ArmConfig {
 public:
  explicit ArmConfig(double acceptance_probability);
  double acceptance_probability() const { return c_; }

 private:
  double c_;
};

struct RecommendationOutcome {
  std::vector<Edge> recommended;
  std::vector<Edge> accepted;
};

// two_hop_count(g, i, j) / (N - 1), clamped to 1. Zero when N == 1.
// Throws std::invalid_argument for a same-community pair and
// std::logic_error when (i, j) is already an edge.
double recommendation_probability(const DirectedGraph& g, NodeId i, NodeId j);

// One pass over all inter-community ordered pairs in lexicographic order,
// evaluated against the graph as given. A recommendation draw is consumed
// only for pairs with non-zero probability, followed by one acceptance draw
// when the pair is recommended. The caller applies `accepted`.
RecommendationOutcome run_arm(const DirectedGraph& g, const ArmConfig& cfg,
                              Rng& rng);

// Adds every accepted pair; returns the number of new edges.
std::size_t apply_accepted(DirectedGraph& g, const RecommendationOutcome& out);

// "RECOMMENDED" and "ACCEPTED" sections, each "N=<n>" then "src dst" lines.
void write_outcome(std::ostream& os, std::size_t n_per_community,
                   const RecommendationOutcome& out);

}  // namespace segsim
