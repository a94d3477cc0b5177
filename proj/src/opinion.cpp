#include "segsim/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "segsim/format.hpp"
#include "segsim/graph.hpp"

namespace segsim {

std::size_t GeometricGraph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& nb : neighbors) degree_sum += nb.size();
  return degree_sum / 2;
}

bool GeometricGraph::connected(std::uint32_t a, std::uint32_t b) const {
  const auto& nb = neighbors[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

void GeometricGraph::connect(std::uint32_t a, std::uint32_t b) {
  if (a == b || connected(a, b)) return;
  auto insert = [](std::vector<std::uint32_t>& v, std::uint32_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  };
  insert(neighbors[a], b);
  insert(neighbors[b], a);
}

GeometricGraph init_geometric_graph(std::size_t n, double r, Rng& rng) {
  if (n < 2) throw std::invalid_argument("geometric graph needs n >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  GeometricGraph g;
  g.positions.resize(2, static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < g.positions.cols(); ++k) {
    g.positions(0, k) = uniform01(rng);
    g.positions(1, k) = uniform01(rng);
  }
  g.neighbors.assign(n, {});
  const double r2 = r * r;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if ((g.positions.col(a) - g.positions.col(b)).squaredNorm() <= r2) {
        g.neighbors[a].push_back(b);
        g.neighbors[b].push_back(a);
      }
  return g;
}

void OpinionConfig::validate() const {
  if (n_agents < 2) throw std::invalid_argument("need at least two agents");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw std::invalid_argument("learning rate must lie in (0, 1]");
  if (!(exploration >= 0.0 && exploration <= 1.0))
    throw std::invalid_argument("exploration rate must lie in [0, 1]");
  if (!(acceptance >= 0.0 && acceptance <= 1.0))
    throw std::invalid_argument("acceptance probability must lie in [0, 1]");
  if (record_every == 0)
    throw std::invalid_argument("record interval must be positive");
}

OpinionState init_opinion_state(const OpinionConfig& cfg) {
  cfg.validate();
  Rng rng = make_stream(cfg.seed, Stream::Init);
  OpinionState state;
  state.graph = init_geometric_graph(cfg.n_agents, cfg.radius, rng);
  state.agents.resize(cfg.n_agents);
  for (OpinionAgent& a : state.agents) {
    a.q_plus = uniform01(rng) - 0.5;
    a.q_minus = uniform01(rng) - 0.5;
    a.opinion = a.preferred();
  }
  return state;
}

double opinion_reward(const OpinionState& state, const OpinionConfig& cfg,
                      std::uint32_t i, std::uint32_t j, int expressed) {
  const int oj = state.agents[j].opinion;
  double r = static_cast<double>(expressed * oj);
  if (cfg.with_arm && expressed != oj) {
    std::size_t allies = 0;
    for (std::uint32_t k : state.graph.neighbors[j])
      if (k != i && state.agents[k].opinion == expressed) ++allies;
    r += cfg.acceptance * static_cast<double>(allies);
  }
  return r;
}

Interaction apply_expression(OpinionState& state, const OpinionConfig& cfg,
                             std::uint32_t i, std::uint32_t j, int expressed,
                             Rng& rng) {
  Interaction out;
  out.skipped = false;
  out.speaker = i;
  out.listener = j;
  out.expressed = expressed;
  out.reward = opinion_reward(state, cfg, i, j, expressed);

  OpinionAgent& a = state.agents[i];
  a.opinion = expressed;
  double& q = expressed > 0 ? a.q_plus : a.q_minus;
  q = (1.0 - cfg.learning_rate) * q + cfg.learning_rate * out.reward;

  if (cfg.with_arm && cfg.materialize_recommendations &&
      state.agents[j].opinion != expressed) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t k : state.graph.neighbors[j])
      if (k != i && state.agents[k].opinion == expressed &&
          !state.graph.connected(i, k))
        candidates.push_back(k);
    for (std::uint32_t k : candidates)
      if (bernoulli(rng, cfg.acceptance)) state.graph.connect(i, k);
  }
  return out;
}

Interaction step_opinion(OpinionState& state, const OpinionConfig& cfg,
                         Rng& rng) {
  const auto i = static_cast<std::uint32_t>(
      uniform_index(rng, state.agents.size()));
  const auto& nb = state.graph.neighbors[i];
  if (nb.empty()) {
    Interaction skipped;
    skipped.speaker = i;
    return skipped;
  }
  const std::uint32_t j = nb[uniform_index(rng, nb.size())];
  const int preferred = state.agents[i].preferred();
  const int expressed =
      bernoulli(rng, cfg.exploration) ? -preferred : preferred;
  return apply_expression(state, cfg, i, j, expressed, rng);
}

double opinion_segregation(const OpinionState& state) {
  std::size_t n_plus = 0;
  for (const OpinionAgent& a : state.agents) n_plus += a.opinion > 0;
  const std::size_t n_minus = state.agents.size() - n_plus;
  std::size_t discordant = 0;
  for (std::uint32_t a = 0; a < state.graph.size(); ++a)
    for (std::uint32_t b : state.graph.neighbors[a])
      if (a < b && state.agents[a].opinion != state.agents[b].opinion)
        ++discordant;
  return segregation_measure(2 * discordant, n_plus, n_minus);
}

OpinionRecord observe(const OpinionState& state, std::size_t step) {
  OpinionRecord rec;
  rec.step = step;
  rec.segregation = opinion_segregation(state);
  double gap = 0.0;
  for (const OpinionAgent& a : state.agents) {
    (a.opinion > 0 ? rec.n_plus : rec.n_minus) += 1;
    gap += a.q_plus - a.q_minus;
  }
  rec.mean_q_gap = gap / static_cast<double>(state.agents.size());
  return rec;
}

OpinionTrace run_opinion(OpinionState state, const OpinionConfig& cfg) {
  cfg.validate();
  Rng rng = make_stream(cfg.seed, Stream::Opinion);
  OpinionTrace trace;
  trace.push_back(observe(state, 0));
  for (std::size_t step = 1; step <= cfg.horizon; ++step) {
    step_opinion(state, cfg, rng);
    if (step % cfg.record_every == 0) trace.push_back(observe(state, step));
  }
  return trace;
}

OpinionTrace run_opinion(const OpinionConfig& cfg) {
  return run_opinion(init_opinion_state(cfg), cfg);
}

void write_opinion_csv(std::ostream& os, const OpinionTrace& trace) {
  os << "step,segregation,n_plus,n_minus,mean_q_gap\n";
  for (const OpinionRecord& r : trace)
    os << r.step << ',' << format_float(r.segregation) << ',' << r.n_plus
       << ',' << r.n_minus << ',' << format_float(r.mean_q_gap) << '\n';
}

}  // namespace segsim
