#include "segsim/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace segsim {

DirectedGraph::DirectedGraph(std::size_t n_per_community)
    : n_(n_per_community),
      adjacency_(4 * n_per_community * n_per_community, 0),
      out_(2 * n_per_community),
      in_(2 * n_per_community),
      inter_out_(2 * n_per_community),
      inter_in_(2 * n_per_community) {
  if (n_per_community == 0)
    throw std::invalid_argument("graph needs at least one node per community");
}

void DirectedGraph::require_node(NodeId i) const {
  if (!valid(i))
    throw std::invalid_argument("node " + std::to_string(i) +
                                " out of range for 2N=" +
                                std::to_string(node_count()));
}

bool DirectedGraph::add_edge(NodeId i, NodeId j) {
  require_node(i);
  require_node(j);
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  auto& cell = adjacency_[static_cast<std::size_t>(i) * node_count() + j];
  if (cell) return false;
  cell = 1;
  ++edge_count_;
  out_[i].push_back(j);
  in_[j].push_back(i);
  if (!same_community(i, j)) {
    ++inter_count_;
    inter_out_[i].push_back(j);
    inter_in_[j].push_back(i);
  }
  return true;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeId i = 0; i < node_count(); ++i) {
    std::vector<NodeId> dst(out_[i]);
    std::sort(dst.begin(), dst.end());
    for (NodeId j : dst) result.emplace_back(i, j);
  }
  return result;
}

Eigen::MatrixXd DirectedGraph::adjacency_matrix() const {
  const auto n = static_cast<Eigen::Index>(node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < node_count(); ++i)
    for (NodeId j : out_[i]) a(i, j) = 1.0;
  return a;
}

int d_indicator(const DirectedGraph& g, NodeId i, NodeId j) {
  g.require_node(i);
  g.require_node(j);
  return !g.same_community(i, j) && g.has_edge(i, j) ? 1 : 0;
}

int s_indicator(const DirectedGraph& g, NodeId i, NodeId j) {
  g.require_node(i);
  g.require_node(j);
  return i != j && g.same_community(i, j) && g.has_edge(i, j) ? 1 : 0;
}

std::size_t inter_edge_count(const DirectedGraph& g) {
  return g.inter_edge_count();
}

double segregation_measure(std::size_t inter_edges, std::size_t red_size,
                           std::size_t blue_size) {
  if (red_size == 0 || blue_size == 0) return 1.0;
  return 1.0 - static_cast<double>(inter_edges) /
                   (2.0 * static_cast<double>(red_size) *
                    static_cast<double>(blue_size));
}

double segregation_measure(const DirectedGraph& g) {
  return segregation_measure(g.inter_edge_count(), g.n_per_community(),
                             g.n_per_community());
}

std::size_t two_hop_count(const DirectedGraph& g, NodeId i, NodeId j) {
  g.require_node(i);
  g.require_node(j);
  if (g.same_community(i, j))
    throw std::invalid_argument("two_hop_count needs an inter-community pair");
  // Every inter-community neighbor of i lives in j's community, so the
  // S(j', j) lookup is a plain edge test.
  std::size_t count = 0;
  for (NodeId jp : g.inter_out_neighbors(i)) count += g.has_edge(jp, j);
  for (NodeId jp : g.inter_in_neighbors(i)) count += g.has_edge(jp, j);
  return count;
}

void write_edge_list(std::ostream& os, const DirectedGraph& g) {
  os << "N=" << g.n_per_community() << '\n';
  for (const auto& [src, dst] : g.edges()) os << src << ' ' << dst << '\n';
}

DirectedGraph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("N=", 0) != 0)
    throw std::runtime_error("edge list must start with an N=<n> header");
  const std::size_t n = std::stoul(line.substr(2));
  DirectedGraph g(n);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t src = 0, dst = 0;
    if (!(ls >> src >> dst))
      throw std::runtime_error("malformed edge on line " +
                               std::to_string(line_no));
    g.add_edge(static_cast<NodeId>(src), static_cast<NodeId>(dst));
  }
  return g;
}

}  // namespace segsim
