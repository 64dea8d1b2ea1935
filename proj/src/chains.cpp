#include "mmech/chains.hpp"

#include <stdexcept>
#include <string>

namespace mmech {

const char* to_string(ChainMode mode) { return mode == ChainMode::Path ? "path" : "dmst"; }

Rational ChainSpec::eps(ChainMode mode) const {
  if (helper_eps) return *helper_eps;
  if (mode == ChainMode::Path) return make_rational(1, 2L * blocks);
  return make_rational(1, 4L * blocks * agents);
}

bool ChainSpec::uses_default_eps(ChainMode mode) const {
  if (!helper_eps) return true;
  ChainSpec plain = *this;
  plain.helper_eps.reset();
  return *helper_eps == plain.eps(mode);
}

void ChainSpec::validate(ChainMode mode) const {
  if (blocks < 1) throw std::invalid_argument("chain needs at least one block");
  if (agents < 2) throw std::invalid_argument("chain needs at least two agents");
  const Rational e = eps(mode);
  if (sgn(e) <= 0) throw std::invalid_argument("helper eps must be positive");
  if (e >= base_cost) throw std::invalid_argument("helper eps must be below the base cost");
}

ChainInstance gen_chain(const ChainSpec& spec) {
  spec.validate(ChainMode::Path);
  const int n = spec.agents, l = spec.blocks;
  std::vector<Edge> edges;
  BlockIndexing idx{n, {}};
  for (int k = 0; k < l; ++k) {
    auto& block = idx.blocks.emplace_back();
    for (AgentId i = 1; i <= n; ++i) {
      const EdgeId id = static_cast<EdgeId>(edges.size());
      edges.push_back({id, k, k + 1, i, spec.base_cost});
      block.push_back({{id}, {}});
    }
  }
  return {Instance(false, l + 1, Mode::Path, 0, l, n, std::move(edges)), std::move(idx)};
}

BlockIndexing chain_indexing(const Instance& chain) {
  const int n = chain.agent_count();
  if (chain.mode() != Mode::Path) throw StructureError("CHAIN must be a path-mode instance");
  if (chain.edge_count() == 0 || chain.edge_count() % n != 0)
    throw StructureError("CHAIN edge count must be a positive multiple of the agent count");
  const int l = chain.edge_count() / n;
  if (chain.node_count() != l + 1 || chain.source() != 0 || chain.target() != l)
    throw StructureError("CHAIN must have nodes 0..l with source 0 and target l");
  BlockIndexing idx{n, {}};
  for (int k = 0; k < l; ++k) {
    auto& block = idx.blocks.emplace_back();
    for (AgentId i = 1; i <= n; ++i) {
      const EdgeId id = k * n + (i - 1);
      const Edge& e = chain.edge(id);
      const bool forward = e.tail == k && e.head == k + 1;
      const bool backward = !chain.directed() && e.tail == k + 1 && e.head == k;
      if (!(forward || backward) || e.owner != i)
        throw StructureError("edge " + std::to_string(id) + " does not match the CHAIN layout");
      block.push_back({{id}, {}});
    }
  }
  return idx;
}

ChainInstance expand_chain(const Instance& chain, const Rational& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("helper eps must be positive");
  const BlockIndexing base = chain_indexing(chain);
  const int n = chain.agent_count(), l = base.block_count();
  int nodes = l + 1;
  std::vector<Edge> edges;
  BlockIndexing idx{n, {}};
  for (int k = 0; k < l; ++k) {
    auto& block = idx.blocks.emplace_back();
    for (AgentId i = 1; i <= n; ++i) {
      const Rational& original = chain.cost(base.route(k, i).rightward.front());
      BlockPath route;
      NodeId prev = k;
      for (AgentId j = 1; j <= n; ++j) {
        const NodeId next = j == n ? k + 1 : nodes++;
        const EdgeId id = static_cast<EdgeId>(edges.size());
        edges.push_back({id, prev, next, j, j == i ? original : eps});
        route.rightward.push_back(id);
        prev = next;
      }
      block.push_back(std::move(route));
    }
  }
  return {Instance(chain.directed(), nodes, Mode::Path, 0, l, n, std::move(edges)), std::move(idx)};
}

BlockIndexing expanded_chain_indexing(const Instance& inst) {
  const int n = inst.agent_count();
  if (inst.mode() != Mode::Path) throw StructureError("EXPANDEDCHAIN must be a path-mode instance");
  if (inst.edge_count() == 0 || inst.edge_count() % (n * n) != 0)
    throw StructureError("EXPANDEDCHAIN edge count must be a positive multiple of n^2");
  const int l = inst.edge_count() / (n * n);
  if (inst.node_count() != l + 1 + l * n * (n - 1) || inst.source() != 0 || inst.target() != l)
    throw StructureError("EXPANDEDCHAIN node layout mismatch");
  BlockIndexing idx{n, {}};
  int inner = l + 1;
  for (int k = 0; k < l; ++k) {
    auto& block = idx.blocks.emplace_back();
    for (AgentId i = 1; i <= n; ++i) {
      BlockPath route;
      NodeId prev = k;
      for (AgentId j = 1; j <= n; ++j) {
        const NodeId next = j == n ? k + 1 : inner++;
        const EdgeId id = static_cast<EdgeId>((k * n + (i - 1)) * n + (j - 1));
        const Edge& e = inst.edge(id);
        const bool forward = e.tail == prev && e.head == next;
        const bool backward = !inst.directed() && e.tail == next && e.head == prev;
        if (!(forward || backward) || e.owner != j)
          throw StructureError("edge " + std::to_string(id) + " does not match the EXPANDEDCHAIN layout");
        route.rightward.push_back(id);
        prev = next;
      }
      block.push_back(std::move(route));
    }
  }
  return idx;
}

BlockIndexing detect_block_indexing(const Instance& inst) {
  try {
    return chain_indexing(inst);
  } catch (const StructureError&) {
  }
  try {
    return expanded_chain_indexing(inst);
  } catch (const StructureError&) {
  }
  throw StructureError("instance is neither a CHAIN nor an EXPANDEDCHAIN");
}

ChainInstance gen_dmst_chain(const ChainSpec& spec) {
  spec.validate(ChainMode::Dmst);
  const int n = spec.agents, l = spec.blocks;
  const Rational eps = spec.eps(ChainMode::Dmst);
  int nodes = l + 1;
  std::vector<Edge> edges;
  BlockIndexing idx{n, {}};
  for (int k = 0; k < l; ++k) {
    auto& block = idx.blocks.emplace_back();
    for (AgentId i = 1; i <= n; ++i) {
      std::vector<NodeId> route_nodes{k};
      for (int j = 1; j < n; ++j) route_nodes.push_back(nodes++);
      route_nodes.push_back(k + 1);
      auto owner = [&](int j) { return j == 1 ? i : ((i + j - 2) % n) + 1; };
      BlockPath route;
      for (int j = 1; j <= n; ++j) {
        const EdgeId id = static_cast<EdgeId>(edges.size());
        edges.push_back({id, route_nodes[static_cast<std::size_t>(j - 1)], route_nodes[static_cast<std::size_t>(j)],
                         owner(j), j == 1 ? spec.base_cost : eps});
        route.rightward.push_back(id);
      }
      for (int j = 2; j <= n; ++j) {
        const EdgeId id = static_cast<EdgeId>(edges.size());
        edges.push_back({id, route_nodes[static_cast<std::size_t>(j)], route_nodes[static_cast<std::size_t>(j - 1)],
                         owner(j), eps});
        route.leftward.push_back(id);
      }
      block.push_back(std::move(route));
    }
  }
  return {Instance(true, nodes, Mode::Arborescence, 0, 0, n, std::move(edges)), std::move(idx)};
}

bool route_selected(const BlockIndexing& idx, const Solution& sol, int block, AgentId agent) {
  for (EdgeId id : idx.route(block, agent).rightward)
    if (!sol.contains(id)) return false;
  return true;
}

}  // namespace mmech
