#include "segsim/dynamics.hpp"

#include <stdexcept>

#include "segsim/game.hpp"

namespace segsim {

namespace {

// k / (size - 1) for k = 0 .. size-1, with the endpoint 0 lifted to the
// action floor.
Eigen::ArrayXd action_grid(std::size_t size) {
  Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(
      static_cast<Eigen::Index>(size), 0.0, 1.0);
  grid(0) = kActionFloor;
  return grid;
}

Eigen::MatrixXd step_matrix(const SemiMarkovChain& chain, std::size_t t) {
  if (chain.jumps_after(t)) return chain.transition();
  const auto n = static_cast<Eigen::Index>(chain.size());
  return Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

MyopicReport verify_myopic_optimality(const SemiMarkovChain& chain,
                                      double gamma, std::size_t grid_size,
                                      std::size_t horizon) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1)");
  if (grid_size < 2) throw std::invalid_argument("grid needs >= 2 actions");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");

  const auto n_states = static_cast<Eigen::Index>(chain.size());
  const Eigen::ArrayXd grid = action_grid(grid_size);

  // stage(a, s): red payoff of grid action a in state s against blue's
  // equilibrium action for that state.
  Eigen::MatrixXd stage(grid.size(), n_states);
  MyopicReport report;
  Eigen::VectorXd myopic_stage(n_states);
  for (Eigen::Index s = 0; s < n_states; ++s) {
    const double c = chain.states()[static_cast<std::size_t>(s)];
    const double blue = nash_action(c);
    for (Eigen::Index a = 0; a < grid.size(); ++a)
      stage(a, s) = arm_payoff(grid(a), blue, c);
    Eigen::Index best = 0;
    myopic_stage(s) = stage.col(s).maxCoeff(&best);
    report.myopic_actions.push_back(grid(best));
    report.nash_actions.push_back(blue);
  }

  Eigen::VectorXd dp = Eigen::VectorXd::Zero(n_states);
  Eigen::VectorXd myopic = Eigen::VectorXd::Zero(n_states);
  for (std::size_t t = horizon; t-- > 0;) {
    const Eigen::MatrixXd p = step_matrix(chain, t);
    const Eigen::VectorXd dp_next = gamma * (p * dp);
    const Eigen::VectorXd myopic_next = gamma * (p * myopic);
    for (Eigen::Index s = 0; s < n_states; ++s) {
      // Full maximization over own actions including the continuation.
      dp(s) = (stage.col(s).array() + dp_next(s)).maxCoeff();
      myopic(s) = myopic_stage(s) + myopic_next(s);
    }
  }

  const auto start = static_cast<Eigen::Index>(chain.initial_state_index());
  report.dp_value = dp(start);
  report.myopic_value = myopic(start);
  report.gap = report.dp_value - report.myopic_value;
  return report;
}

}  // namespace segsim
