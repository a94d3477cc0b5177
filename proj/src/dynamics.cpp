#include "segsim/dynamics.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

#include "segsim/format.hpp"
#include "segsim/game.hpp"

namespace segsim {

ProtocolConfig ProtocolConfig::protocol1(std::size_t n, std::size_t horizon,
                                         RngSeed seed) {
  ProtocolConfig cfg;
  cfg.protocol = Protocol::P1;
  cfg.n_per_community = n;
  cfg.horizon = horizon;
  cfg.seed = seed;
  return cfg;
}

ProtocolConfig ProtocolConfig::protocol2(std::size_t n, std::size_t horizon,
                                         double c, RngSeed seed) {
  ProtocolConfig cfg = protocol1(n, horizon, seed);
  cfg.protocol = Protocol::P2;
  cfg.arm = ArmConfig(c);
  return cfg;
}

ProtocolConfig ProtocolConfig::protocol3(std::size_t n, std::size_t horizon,
                                         SemiMarkovChain chain, RngSeed seed) {
  ProtocolConfig cfg = protocol1(n, horizon, seed);
  cfg.protocol = Protocol::P3;
  cfg.chain = std::move(chain);
  return cfg;
}

void ProtocolConfig::validate() const {
  if (n_per_community == 0)
    throw std::invalid_argument("n_per_community must be positive");
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  switch (protocol) {
    case Protocol::P1:
      if (arm || chain)
        throw std::invalid_argument("protocol 1 takes no recommendation input");
      break;
    case Protocol::P2:
      if (!arm || chain)
        throw std::invalid_argument(
            "protocol 2 needs a fixed acceptance probability and no chain");
      break;
    case Protocol::P3:
      if (!chain || arm)
        throw std::invalid_argument(
            "protocol 3 needs an acceptance-probability chain");
      break;
  }
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must lie in (0, 1)");
}

namespace {

double respond(Protocol protocol, double c, double opponent_p) {
  // Without recommendations own payoff p_own - p_other is strictly
  // increasing, so 1 dominates.
  if (protocol == Protocol::P1) return 1.0;
  return best_response_arm(c, opponent_p);
}

}  // namespace

Trace run_protocol(const ProtocolConfig& cfg) {
  cfg.validate();
  Rng init_rng = make_stream(cfg.seed, Stream::Init);
  Rng graph_rng = make_stream(cfg.seed, Stream::Graph);
  Rng arm_rng = make_stream(cfg.seed, Stream::Arm);
  Rng chain_rng = make_stream(cfg.seed, Stream::Chain);

  std::optional<SemiMarkovChain> chain = cfg.chain;
  if (chain) chain->reset();

  double p_r = uniform_open_closed(init_rng);
  double p_b = uniform_open_closed(init_rng);

  Trace trace;
  trace.reserve(cfg.horizon);
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    std::optional<double> c;
    if (cfg.arm) c = cfg.arm->acceptance_probability();
    if (chain) c = chain->current();

    if (t > 0) {
      if (t % 2 == 1)
        p_r = respond(cfg.protocol, c.value_or(0.0), p_b);
      else
        p_b = respond(cfg.protocol, c.value_or(0.0), p_r);
    }

    const auto m = block_matrix(StrategyPair(p_r, p_b), cfg.n_per_community);
    DirectedGraph g = sample_snapshot(m, cfg.n_per_community, graph_rng);

    TraceRecord rec;
    rec.t = t;
    rec.p_r = p_r;
    rec.p_b = p_b;
    rec.acceptance_probability = c;
    if (c) {
      const RecommendationOutcome out = run_arm(g, ArmConfig(*c), arm_rng);
      apply_accepted(g, out);
      rec.recommended = out.recommended.size();
      rec.accepted = out.accepted.size();
    }
    rec.segregation = segregation_measure(g);
    rec.inter_edges = g.inter_edge_count();
    trace.push_back(rec);

    if (chain) chain->step(t, chain_rng);
  }
  return trace;
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "t,p_r,p_b,c,segregation,inter_edges,recommended,accepted\n";
  for (const TraceRecord& r : trace) {
    os << r.t << ',' << format_float(r.p_r) << ',' << format_float(r.p_b)
       << ',';
    if (r.acceptance_probability) os << format_float(*r.acceptance_probability);
    os << ',' << format_float(r.segregation) << ',' << r.inter_edges << ',';
    if (r.recommended) os << *r.recommended;
    os << ',';
    if (r.accepted) os << *r.accepted;
    os << '\n';
  }
}

}  // namespace segsim
