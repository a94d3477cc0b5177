#include "segsim/semi_markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace segsim {

SemiMarkovChain::SemiMarkovChain(std::vector<double> states,
                                 Eigen::MatrixXd transition,
                                 std::size_t holding_time,
                                 std::size_t initial_state)
    : states_(std::move(states)),
      transition_(std::move(transition)),
      holding_time_(holding_time),
      initial_(initial_state),
      current_(initial_state) {
  const auto n = static_cast<Eigen::Index>(states_.size());
  if (n == 0) throw std::invalid_argument("chain needs at least one state");
  if (transition_.rows() != n || transition_.cols() != n)
    throw std::invalid_argument("transition matrix must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  if (holding_time_ == 0)
    throw std::invalid_argument("holding time must be positive");
  if (initial_ >= states_.size())
    throw std::invalid_argument("initial state index out of range");
  for (double c : states_)
    if (!(c >= 0.0 && c <= 1.0))
      throw std::invalid_argument("chain states must lie in [0, 1]");
  if ((transition_.array() < 0.0).any())
    throw std::invalid_argument("transition probabilities must be >= 0");
  for (Eigen::Index r = 0; r < n; ++r)
    if (std::abs(transition_.row(r).sum() - 1.0) > 1e-12)
      throw std::invalid_argument("transition row " + std::to_string(r) +
                                  " does not sum to 1");
}

double SemiMarkovChain::step_probability(std::size_t t, std::size_t from,
                                         std::size_t to) const {
  if (jumps_after(t))
    return transition_(static_cast<Eigen::Index>(from),
                       static_cast<Eigen::Index>(to));
  return from == to ? 1.0 : 0.0;
}

double SemiMarkovChain::step(std::size_t t, Rng& rng) {
  if (!jumps_after(t)) return current();
  const auto row = transition_.row(static_cast<Eigen::Index>(current_));
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t next = states_.size() - 1;
  for (Eigen::Index k = 0; k < row.size(); ++k) {
    acc += row(k);
    if (u < acc) {
      next = static_cast<std::size_t>(k);
      break;
    }
  }
  // Rounding can leave acc just below 1; fall back to the last state with
  // positive mass.
  if (u >= acc)
    while (next > 0 && row(static_cast<Eigen::Index>(next)) == 0.0) --next;
  current_ = next;
  return current();
}

}  // namespace segsim
