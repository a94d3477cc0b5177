#pragma once

// Two-player reduction of the edge-formation game: expected utilities in the
// large-N limit, best responses, iterated strict dominance and the
// closed-form Nash equilibrium. Scalar-generic so the same formulas run in
// double, long double or an autodiff type.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "segsim/disbm.hpp"

namespace segsim {

enum class Player { Red, Blue };

inline Player opponent(Player p) {
  return p == Player::Red ? Player::Blue : Player::Red;
}

// Lower end of the action set (0, 1]. Never reached by an optimum.
inline constexpr double kActionFloor = 1e-9;

// Expected payoff p_own - p_other without recommendations.
template <typename Scalar>
constexpr Scalar base_payoff(const Scalar& own, const Scalar& other) {
  return own - other;
}

// own - other + C [other (2 - own - other) + own (1 - own)]
template <typename Scalar>
constexpr Scalar arm_payoff(const Scalar& own, const Scalar& other,
                            const Scalar& c) {
  return own - other +
         c * (other * (Scalar(2) - own - other) + own * (Scalar(1) - own));
}

// d/d own of arm_payoff: 1 - C (2 own + other - 1).
template <typename Scalar>
constexpr Scalar arm_payoff_slope(const Scalar& own, const Scalar& other,
                                  const Scalar& c) {
  return Scalar(1) - c * (Scalar(2) * own + other - Scalar(1));
}

inline std::pair<double, double> own_other(const StrategyPair& s, Player role) {
  return role == Player::Red ? std::pair{s.red(), s.blue()}
                             : std::pair{s.blue(), s.red()};
}

inline double expected_utility_base(const StrategyPair& s, Player role) {
  const auto [own, oth] = own_other(s, role);
  return base_payoff(own, oth);
}

inline double expected_utility_arm(const StrategyPair& s, double c,
                                   Player role) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("acceptance probability must lie in [0, 1]");
  const auto [own, oth] = own_other(s, role);
  return arm_payoff(own, oth, c);
}

// argmax over (0, 1] of arm_payoff(., opponent_p, c). For c <= 1/2 the payoff
// is non-decreasing on the whole action set and the answer is 1; c == 0 is
// the base game with its dominant strategy 1.
template <typename Scalar>
Scalar best_response_arm(const Scalar& c, const Scalar& opponent_p) {
  if (c <= Scalar(0.5)) return Scalar(1);
  const Scalar interior = (Scalar(1) / c + Scalar(1) - opponent_p) / Scalar(2);
  return std::clamp(interior, Scalar(kActionFloor), Scalar(1));
}

enum class Regime { Segregation, Integration };

struct EquilibriumResult {
  StrategyPair strategy;
  Regime regime;
  double acceptance_probability;
};

// (1, 1) for C <= 1/2, else 1/(3C) + 1/3 for both players.
template <typename Scalar>
Scalar nash_action(const Scalar& c) {
  if (c <= Scalar(0.5)) return Scalar(1);
  return Scalar(1) / (Scalar(3) * c) + Scalar(1) / Scalar(3);
}

inline EquilibriumResult nash_equilibrium(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("acceptance probability must lie in [0, 1]");
  const double p = nash_action(c);
  return {StrategyPair(p, p),
          c <= 0.5 ? Regime::Segregation : Regime::Integration, c};
}

struct Interval {
  double low;
  double high;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Undominated action sets after 1..iterations rounds of elimination,
// starting from [1/(2C), 1]. Only defined for C > 1/2.
std::vector<Interval> iterated_dominance(double c, int iterations);

// Central-difference estimate of d^2 U_R / dp_R dp_B for the recommendation
// game; all four stencil points must stay inside (0, 1].
double cross_partial(double c, const StrategyPair& s, double h);

}  // namespace segsim
