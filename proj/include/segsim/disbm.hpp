#pragma once

// Directed stochastic block model snapshots driven by the community actions.

#include <cstddef>

#include <Eigen/Dense>

#include "segsim/graph.hpp"
#include "segsim/rng.hpp"

namespace segsim {

// Action pair (p_R, p_B); each is the probability that a user follows a
// member of its own community. Both lie in (0, 1].
class StrategyPair {
 public:
  StrategyPair(double red, double blue);

  double red() const { return red_; }
  double blue() const { return blue_; }
  double of(Community c) const { return c == Community::Red ? red_ : blue_; }

  friend bool operator==(const StrategyPair&, const StrategyPair&) = default;

 private:
  double red_;
  double blue_;
};

// follow(a, b) is the probability that a given member of community a follows
// a given member of community b, i.e. that edge (v_b, v_a) is present.
class BlockProbabilityMatrix {
 public:
  BlockProbabilityMatrix() = default;
  explicit BlockProbabilityMatrix(const Eigen::Matrix2d& follow);

  double follow(Community follower, Community followee) const {
    return follow_(static_cast<int>(follower), static_cast<int>(followee));
  }
  // Probability that edge (src, dst) is drawn.
  double edge(Community src, Community dst) const { return follow(dst, src); }

  double rr() const { return follow_(0, 0); }
  double rb() const { return follow_(0, 1); }
  double br() const { return follow_(1, 0); }
  double bb() const { return follow_(1, 1); }

  const Eigen::Matrix2d& matrix() const { return follow_; }

 private:
  Eigen::Matrix2d follow_ = Eigen::Matrix2d::Zero();
};

// [[p_R, (1-p_R)/N], [(1-p_B)/N, p_B]]
BlockProbabilityMatrix block_matrix(const StrategyPair& s, std::size_t n);

// One Bernoulli draw per ordered pair (i, j), i != j, in lexicographic order.
DirectedGraph sample_snapshot(const BlockProbabilityMatrix& m, std::size_t n,
                              Rng& rng);

}  // namespace segsim
