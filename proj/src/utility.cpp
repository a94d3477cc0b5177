#include "segsim/utility.hpp"

namespace segsim {

long realized_utility_base(const DirectedGraph& g, NodeId i) {
  g.require_node(i);
  return static_cast<long>(g.inter_out_neighbors(i).size()) -
         static_cast<long>(g.inter_in_neighbors(i).size());
}

double realized_utility_arm(const DirectedGraph& g, NodeId i,
                            const ArmConfig& cfg) {
  const double base = static_cast<double>(realized_utility_base(g, i));
  const std::size_t n = g.n_per_community();
  const double c = cfg.acceptance_probability();
  if (n < 2 || c == 0.0) return base;

  // Recommendations i can still receive from the other community.
  std::size_t support = 0;
  const NodeId lo = g.first(other(g.community(i)));
  for (NodeId j = lo; j < lo + n; ++j)
    if (!g.has_edge(i, j)) support += two_hop_count(g, i, j);

  // Bridges from i's inter-community friends j to i's own followers i'.
  std::size_t bridges = 0;
  for (NodeId j : g.inter_in_neighbors(i))
    for (NodeId ip : g.out_neighbors(i))
      if (g.same_community(i, ip) && !g.has_edge(j, ip)) ++bridges;

  return base + c * static_cast<double>(support + bridges) /
                    static_cast<double>(n - 1);
}

Eigen::VectorXd realized_utilities_arm(const DirectedGraph& g,
                                       const ArmConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(g.n_per_community());
  const double c = cfg.acceptance_probability();
  const Eigen::MatrixXd a = g.adjacency_matrix();

  // own_own: own -> own, own_oth: own -> other, and so on.
  auto side = [&](const auto& own_own, const auto& own_oth,
                  const auto& oth_own, const auto& oth_oth) {
    Eigen::VectorXd u = own_oth.rowwise().sum() -
                        oth_own.colwise().sum().transpose();
    if (n < 2 || c == 0.0) return u;
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd hops = (own_oth + oth_own.transpose()) * oth_oth;
    const Eigen::MatrixXd reach = own_own * (ones - oth_own).transpose();
    const Eigen::VectorXd support =
        (ones - own_oth).cwiseProduct(hops).rowwise().sum();
    const Eigen::VectorXd bridges =
        oth_own.transpose().cwiseProduct(reach).rowwise().sum();
    u += (c / static_cast<double>(n - 1)) * (support + bridges);
    return u;
  };

  Eigen::VectorXd out(2 * n);
  out.head(n) = side(a.topLeftCorner(n, n), a.topRightCorner(n, n),
                     a.bottomLeftCorner(n, n), a.bottomRightCorner(n, n));
  out.tail(n) = side(a.bottomRightCorner(n, n), a.bottomLeftCorner(n, n),
                     a.topRightCorner(n, n), a.topLeftCorner(n, n));
  return out;
}

}  // namespace segsim
