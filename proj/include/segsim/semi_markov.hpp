#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "segsim/rng.hpp"

namespace segsim {

// Acceptance probability held for a fixed number of steps between Markov
// jumps. A jump happens after step t exactly when (t + 1) % holding_time == 0.
class SemiMarkovChain {
 public:
  SemiMarkovChain(std::vector<double> states, Eigen::MatrixXd transition,
                  std::size_t holding_time, std::size_t initial_state);

  const std::vector<double>& states() const { return states_; }
  const Eigen::MatrixXd& transition() const { return transition_; }
  std::size_t holding_time() const { return holding_time_; }
  std::size_t initial_state_index() const { return initial_; }
  std::size_t current_state_index() const { return current_; }
  double current() const { return states_[current_]; }
  std::size_t size() const { return states_.size(); }

  // Transition probability out of state `from` after step t.
  double step_probability(std::size_t t, std::size_t from,
                          std::size_t to) const;

  bool jumps_after(std::size_t t) const {
    return (t + 1) % holding_time_ == 0;
  }

  void reset() { current_ = initial_; }

  // Advances from step t to t + 1 and returns C at t + 1. Consumes one draw
  // only at jump instants.
  double step(std::size_t t, Rng& rng);

 private:
  std::vector<double> states_;
  Eigen::MatrixXd transition_;
  std::size_t holding_time_;
  std::size_t initial_;
  std::size_t current_;
};

inline double step_semi_markov(SemiMarkovChain& chain, std::size_t t,
                               Rng& rng) {
  return chain.step(t, rng);
}

}  // namespace segsim
