#include "segsim/disbm.hpp"

#include <stdexcept>
#include <string>

namespace segsim {

StrategyPair::StrategyPair(double red, double blue) : red_(red), blue_(blue) {
  auto check = [](double p, const char* who) {
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument(std::string(who) +
                                  " action must lie in (0, 1], got " +
                                  std::to_string(p));
  };
  check(red, "red");
  check(blue, "blue");
}

BlockProbabilityMatrix::BlockProbabilityMatrix(const Eigen::Matrix2d& follow)
    : follow_(follow) {
  if ((follow.array() < 0.0).any() || (follow.array() > 1.0).any())
    throw std::invalid_argument("block probabilities must lie in [0, 1]");
}

BlockProbabilityMatrix block_matrix(const StrategyPair& s, std::size_t n) {
  if (n == 0) throw std::invalid_argument("block_matrix needs n >= 1");
  const double nn = static_cast<double>(n);
  Eigen::Matrix2d m;
  m << s.red(), (1.0 - s.red()) / nn,
       (1.0 - s.blue()) / nn, s.blue();
  return BlockProbabilityMatrix(m);
}

DirectedGraph sample_snapshot(const BlockProbabilityMatrix& m, std::size_t n,
                              Rng& rng) {
  DirectedGraph g(n);
  const auto total = static_cast<NodeId>(g.node_count());
  for (NodeId i = 0; i < total; ++i) {
    const Community ci = g.community(i);
    for (NodeId j = 0; j < total; ++j) {
      if (i == j) continue;
      if (bernoulli(rng, m.edge(ci, g.community(j)))) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace segsim
