#pragma once

// Directed two-community graph.
//
// Nodes 0..N-1 form the red community, N..2N-1 the blue community. An edge
// (i, j) means "j follows i": i gains a follower, j gains a friend. This is
// the orientation under which the closed-form expected utilities hold.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace segsim {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

enum class Community : std::uint8_t { Red = 0, Blue = 1 };

inline Community other(Community c) {
  return c == Community::Red ? Community::Blue : Community::Red;
}

class DirectedGraph {
 public:
  explicit DirectedGraph(std::size_t n_per_community);

  std::size_t n_per_community() const { return n_; }
  std::size_t node_count() const { return 2 * n_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t inter_edge_count() const { return inter_count_; }

  bool valid(NodeId i) const { return i < node_count(); }
  Community community(NodeId i) const {
    return i < n_ ? Community::Red : Community::Blue;
  }
  bool same_community(NodeId i, NodeId j) const {
    return community(i) == community(j);
  }
  // First node of a community; its members are [first, first + N).
  NodeId first(Community c) const {
    return c == Community::Red ? 0 : static_cast<NodeId>(n_);
  }

  // Unchecked O(1) membership.
  bool has_edge(NodeId i, NodeId j) const {
    return adjacency_[static_cast<std::size_t>(i) * node_count() + j] != 0;
  }

  // Returns false when the edge is already present. Throws
  // std::invalid_argument on a self-loop or an out-of-range node.
  bool add_edge(NodeId i, NodeId j);

  std::span<const NodeId> out_neighbors(NodeId i) const { return out_[i]; }
  std::span<const NodeId> in_neighbors(NodeId i) const { return in_[i]; }
  // Only the neighbors in the other community.
  std::span<const NodeId> inter_out_neighbors(NodeId i) const {
    return inter_out_[i];
  }
  std::span<const NodeId> inter_in_neighbors(NodeId i) const {
    return inter_in_[i];
  }

  // Sorted lexicographically by (src, dst).
  std::vector<Edge> edges() const;

  // 0/1 adjacency, row = source.
  Eigen::MatrixXd adjacency_matrix() const;

  void require_node(NodeId i) const;

 private:
  std::size_t n_;
  std::size_t edge_count_ = 0;
  std::size_t inter_count_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<NodeId>> out_, in_, inter_out_, inter_in_;
};

int d_indicator(const DirectedGraph& g, NodeId i, NodeId j);
int s_indicator(const DirectedGraph& g, NodeId i, NodeId j);

std::size_t inter_edge_count(const DirectedGraph& g);

// s = 1 - inter / (2 |R| |B|), and 1 when either community is empty.
double segregation_measure(std::size_t inter_edges, std::size_t red_size,
                           std::size_t blue_size);
double segregation_measure(const DirectedGraph& g);

// Number of j's same-community friends j' (edges (j', j)) that are linked to
// i in either direction. i and j must be in different communities.
std::size_t two_hop_count(const DirectedGraph& g, NodeId i, NodeId j);

// "N=<n>" header, then one "src dst" line per edge in lexicographic order.
void write_edge_list(std::ostream& os, const DirectedGraph& g);
DirectedGraph read_edge_list(std::istream& is);

}  // namespace segsim
