#include "mmech/sampling.hpp"

#include "mmech/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmech {

long long uniform_int(Rng& rng, long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = Rng::max() - Rng::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<long long>(draw % span);
}

Rational sample_cost(Rng& rng, CostDistribution dist) {
  if (dist == CostDistribution::Integers1To10) return Rational(static_cast<long>(uniform_int(rng, 1, 10)));
  Rational r(static_cast<long>(uniform_int(rng, 0, 20)), static_cast<unsigned long>(uniform_int(rng, 1, 4)));
  r.canonicalize();
  return r;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

namespace {

Instance sample_once(Rng& rng, const SampleSpec& spec) {
  const bool arborescence = spec.mode == Mode::Arborescence;
  const bool directed = arborescence || spec.directed;
  const int nodes = static_cast<int>(uniform_int(rng, spec.min_nodes, spec.max_nodes));
  const int agents = static_cast<int>(uniform_int(rng, spec.min_agents, spec.max_agents));
  std::vector<Edge> edges;
  auto add = [&](NodeId u, NodeId v) {
    const EdgeId id = static_cast<EdgeId>(edges.size());
    edges.push_back({id, u, v, static_cast<AgentId>(uniform_int(rng, 1, agents)), sample_cost(rng, spec.costs)});
  };

  std::vector<NodeId> perm(static_cast<std::size_t>(nodes));
  for (int v = 0; v < nodes; ++v) perm[static_cast<std::size_t>(v)] = v;
  for (std::size_t k = perm.size(); k > 1; --k)
    std::swap(perm[k - 1], perm[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(k) - 1))]);

  NodeId source = 0, target = nodes - 1;
  if (arborescence) {
    // Random recursive tree over a random node order; root is perm[0].
    source = target = perm[0];
    for (std::size_t k = 1; k < perm.size(); ++k)
      add(perm[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(k) - 1))], perm[k]);
  } else {
    // A random path from source to target through a random subset of nodes.
    source = perm[0];
    target = perm[perm.size() - 1];
    NodeId prev = source;
    for (std::size_t k = 1; k + 1 < perm.size(); ++k) {
      if (uniform_int(rng, 0, 1) == 0) continue;
      add(prev, perm[k]);
      prev = perm[k];
    }
    add(prev, target);
  }
  const int extra = static_cast<int>(std::lround(spec.extra_edge_factor * nodes));
  for (int k = 0; k < extra; ++k) {
    const auto u = static_cast<NodeId>(uniform_int(rng, 0, nodes - 1));
    auto v = static_cast<NodeId>(uniform_int(rng, 0, nodes - 2));
    if (v >= u) ++v;
    add(u, v);
  }
  return Instance(directed, nodes, spec.mode, source, target, agents, std::move(edges));
}

bool payable(const Instance& inst) {
  for (AgentId i = 1; i <= inst.agent_count(); ++i) {
    if (inst.edges_of(i).empty()) continue;
    try {
      (void)min_sum(inst, mask_without_agent(inst, i));
    } catch (const NoFeasibleSolution&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Instance sample_instance(Rng& rng, const SampleSpec& spec) {
  if (spec.min_nodes < 2 || spec.max_nodes < spec.min_nodes || spec.min_agents < 1 ||
      spec.max_agents < spec.min_agents)
    throw std::invalid_argument("bad sample spec");
  if (spec.require_payable && spec.max_agents < 2)
    throw std::invalid_argument("a single agent is always pivotal-infeasible");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Instance inst = sample_once(rng, spec);
    if (!spec.require_payable || payable(inst)) return inst;
  }
  throw std::runtime_error("could not sample a payable instance");
}

}  // namespace mmech
