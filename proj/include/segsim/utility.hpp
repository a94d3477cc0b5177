#pragma once

// Realized utilities evaluated on a concrete graph.

#include <Eigen/Dense>

#include "segsim/arm.hpp"
#include "segsim/graph.hpp"

namespace segsim {

// Inter-community followers minus inter-community friends.
long realized_utility_base(const DirectedGraph& g, NodeId i);

// Base utility plus the expected number of recommendation edges i receives
// and the reward for bridging its own followers to its inter-community
// friends. Zero ARM terms when N == 1.
double realized_utility_arm(const DirectedGraph& g, NodeId i,
                            const ArmConfig& cfg);

// The same quantity for every node at once, via block products of the
// adjacency matrix. Entry k belongs to node k.
Eigen::VectorXd realized_utilities_arm(const DirectedGraph& g,
                                       const ArmConfig& cfg);

}  // namespace segsim
