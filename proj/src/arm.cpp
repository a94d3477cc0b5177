#include "segsim/arm.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace segsim {

ArmConfig::ArmConfig(double acceptance_probability)
    : c_(acceptance_probability) {
  if (!(c_ >= 0.0 && c_ <= 1.0))
    throw std::invalid_argument("acceptance probability must lie in [0, 1]");
}

namespace {

double support_ratio(const DirectedGraph& g, NodeId i, NodeId j) {
  const std::size_t n = g.n_per_community();
  if (n < 2) return 0.0;
  const double ratio = static_cast<double>(two_hop_count(g, i, j)) /
                       static_cast<double>(n - 1);
  return std::min(ratio, 1.0);
}

}  // namespace

double recommendation_probability(const DirectedGraph& g, NodeId i, NodeId j) {
  g.require_node(i);
  g.require_node(j);
  if (g.same_community(i, j))
    throw std::invalid_argument("recommendations are inter-community only");
  if (g.has_edge(i, j))
    throw std::logic_error("pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") is already an edge");
  return support_ratio(g, i, j);
}

RecommendationOutcome run_arm(const DirectedGraph& g, const ArmConfig& cfg,
                              Rng& rng) {
  RecommendationOutcome out;
  const double c = cfg.acceptance_probability();
  const auto total = static_cast<NodeId>(g.node_count());
  for (NodeId i = 0; i < total; ++i) {
    const NodeId lo = g.first(other(g.community(i)));
    const NodeId hi = lo + static_cast<NodeId>(g.n_per_community());
    for (NodeId j = lo; j < hi; ++j) {
      if (g.has_edge(i, j)) continue;
      const double p = support_ratio(g, i, j);
      if (p == 0.0 || !bernoulli(rng, p)) continue;
      out.recommended.emplace_back(i, j);
      if (bernoulli(rng, c)) out.accepted.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t apply_accepted(DirectedGraph& g, const RecommendationOutcome& out) {
  std::size_t added = 0;
  for (const auto& [i, j] : out.accepted) added += g.add_edge(i, j);
  return added;
}

void write_outcome(std::ostream& os, std::size_t n_per_community,
                   const RecommendationOutcome& out) {
  auto section = [&](const char* name, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    os << name << '\n' << "N=" << n_per_community << '\n';
    for (const auto& [i, j] : edges) os << i << ' ' << j << '\n';
  };
  section("RECOMMENDED", out.recommended);
  section("ACCEPTED", out.accepted);
}

}  // namespace segsim
