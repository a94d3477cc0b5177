#include "segsim/game.hpp"

#include <string>

namespace segsim {

std::vector<Interval> iterated_dominance(double c, int iterations) {
  if (!(c > 0.5 && c <= 1.0))
    throw std::domain_error(
        "iterated dominance interval recursion needs 1/2 < C <= 1, got " +
        std::to_string(c));
  if (iterations < 1)
    throw std::invalid_argument("iterations must be positive");
  const double reach = 1.0 / c + 1.0;
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(iterations));
  out.push_back({1.0 / (2.0 * c), 1.0});
  for (int k = 1; k < iterations; ++k) {
    const Interval prev = out.back();
    out.push_back({0.5 * (reach - prev.high),
                   std::min(1.0, 0.5 * (reach - prev.low))});
  }
  return out;
}

double cross_partial(double c, const StrategyPair& s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  auto inside = [](double p) { return p > 0.0 && p <= 1.0; };
  const double r = s.red(), b = s.blue();
  if (!inside(r - h) || !inside(r + h) || !inside(b - h) || !inside(b + h))
    throw std::invalid_argument("finite-difference stencil leaves (0, 1]");
  auto u = [c](double pr, double pb) { return arm_payoff(pr, pb, c); };
  return (u(r + h, b + h) - u(r + h, b - h) - u(r - h, b + h) +
          u(r - h, b - h)) /
         (4.0 * h * h);
}

}  // namespace segsim
