#include "mmech/solvers.hpp"

#include "mmech/chains.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <queue>
#include <string>

namespace mmech {

const char* to_string(Objective objective) { return objective == Objective::MinSum ? "min-sum" : "min-max"; }

namespace {

// Lexicographic (cost, sum of 2^id) key. Every edge weighs strictly more than
// zero in this order, so shortest walks are simple and optima are unique.
struct TieCost {
  Rational cost;
  mpz_class tie;

  TieCost& operator+=(const TieCost& o) {
    cost += o.cost;
    tie += o.tie;
    return *this;
  }
  friend TieCost operator+(TieCost a, const TieCost& b) { return a += b; }
  friend TieCost operator-(const TieCost& a, const TieCost& b) { return {a.cost - b.cost, a.tie - b.tie}; }
  friend bool operator<(const TieCost& a, const TieCost& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.tie < b.tie;
  }
};

TieCost edge_key(const Instance& inst, EdgeId id) {
  mpz_class bit;
  mpz_setbit(bit.get_mpz_t(), static_cast<mp_bitcnt_t>(id));
  return {inst.cost(id), bit};
}

bool allowed_edge(const EdgeMask& mask, EdgeId id) {
  return mask.empty() || mask[static_cast<std::size_t>(id)] != 0;
}

Rational total_cost(const Instance& inst, const Solution& sol) {
  Rational sum = 0;
  for (EdgeId id : sol.edge_ids()) sum += inst.cost(id);
  return sum;
}

struct WeightedArc {
  int from;
  int to;
  TieCost weight;
  int origin;  // index into the caller's arc list
};

// Chu-Liu/Edmonds. Returns the selected arc indices or nullopt if some node is unreachable.
std::optional<std::vector<int>> edmonds(int nodes, int root, const std::vector<WeightedArc>& arcs) {
  std::vector<int> best_in(static_cast<std::size_t>(nodes), -1);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto& a = arcs[k];
    if (a.to == root || a.from == a.to) continue;
    int& slot = best_in[static_cast<std::size_t>(a.to)];
    if (slot < 0 || a.weight < arcs[static_cast<std::size_t>(slot)].weight) slot = static_cast<int>(k);
  }
  for (int v = 0; v < nodes; ++v)
    if (v != root && best_in[static_cast<std::size_t>(v)] < 0) return std::nullopt;

  std::vector<int> cycle_of(static_cast<std::size_t>(nodes), -1);
  std::vector<int> visited_by(static_cast<std::size_t>(nodes), -1);
  int cycles = 0;
  for (int v = 0; v < nodes; ++v) {
    int x = v;
    while (x != root && visited_by[static_cast<std::size_t>(x)] != v && cycle_of[static_cast<std::size_t>(x)] < 0) {
      visited_by[static_cast<std::size_t>(x)] = v;
      x = arcs[static_cast<std::size_t>(best_in[static_cast<std::size_t>(x)])].from;
    }
    if (x != root && cycle_of[static_cast<std::size_t>(x)] < 0 && visited_by[static_cast<std::size_t>(x)] == v) {
      for (int y = x;;) {
        cycle_of[static_cast<std::size_t>(y)] = cycles;
        y = arcs[static_cast<std::size_t>(best_in[static_cast<std::size_t>(y)])].from;
        if (y == x) break;
      }
      ++cycles;
    }
  }
  if (cycles == 0) {
    std::vector<int> out;
    for (int v = 0; v < nodes; ++v)
      if (v != root) out.push_back(best_in[static_cast<std::size_t>(v)]);
    return out;
  }

  std::vector<int> label(static_cast<std::size_t>(nodes));
  int next = cycles;
  for (int v = 0; v < nodes; ++v) {
    const int c = cycle_of[static_cast<std::size_t>(v)];
    label[static_cast<std::size_t>(v)] = c >= 0 ? c : next++;
  }
  std::vector<WeightedArc> contracted;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto& a = arcs[k];
    const int from = label[static_cast<std::size_t>(a.from)], to = label[static_cast<std::size_t>(a.to)];
    if (from == to || a.to == root) continue;
    contracted.push_back(
        {from, to, a.weight - arcs[static_cast<std::size_t>(best_in[static_cast<std::size_t>(a.to)])].weight,
         static_cast<int>(k)});
  }
  auto sub = edmonds(next, label[static_cast<std::size_t>(root)], contracted);
  if (!sub) return std::nullopt;

  std::vector<int> out;
  std::vector<char> entered(static_cast<std::size_t>(nodes), 0);
  for (int c : *sub) {
    const int k = contracted[static_cast<std::size_t>(c)].origin;
    out.push_back(k);
    entered[static_cast<std::size_t>(arcs[static_cast<std::size_t>(k)].to)] = 1;
  }
  for (int v = 0; v < nodes; ++v)
    if (cycle_of[static_cast<std::size_t>(v)] >= 0 && !entered[static_cast<std::size_t>(v)])
      out.push_back(best_in[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

EdgeMask mask_without_agent(const Instance& inst, AgentId agent) {
  EdgeMask mask(static_cast<std::size_t>(inst.edge_count()), 1);
  for (EdgeId id : inst.edges_of(agent)) mask[static_cast<std::size_t>(id)] = 0;
  return mask;
}

OptimumReport shortest_path(const Instance& inst, const EdgeMask& allowed) {
  if (inst.mode() != Mode::Path) throw std::invalid_argument("shortest_path requires a path-mode instance");
  const auto nodes = static_cast<std::size_t>(inst.node_count());
  std::vector<std::optional<TieCost>> dist(nodes);
  std::vector<EdgeId> via(nodes, -1);
  std::vector<char> done(nodes, 0);

  using Item = std::pair<TieCost, NodeId>;
  auto greater = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(greater)> queue(greater);
  dist[static_cast<std::size_t>(inst.source())] = TieCost{0, 0};
  queue.push({TieCost{0, 0}, inst.source()});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (done[static_cast<std::size_t>(v)]) continue;
    done[static_cast<std::size_t>(v)] = 1;
    if (v == inst.target()) break;
    for (EdgeId id : inst.out_edges(v)) {
      if (!allowed_edge(allowed, id)) continue;
      const NodeId w = inst.other_end(id, v);
      if (done[static_cast<std::size_t>(w)]) continue;
      TieCost cand = d + edge_key(inst, id);
      auto& slot = dist[static_cast<std::size_t>(w)];
      if (!slot || cand < *slot) {
        slot = cand;
        via[static_cast<std::size_t>(w)] = id;
        queue.push({std::move(cand), w});
      }
    }
  }
  if (!dist[static_cast<std::size_t>(inst.target())]) throw NoFeasibleSolution("target unreachable from source");
  std::vector<EdgeId> ids;
  for (NodeId v = inst.target(); v != inst.source();) {
    const EdgeId id = via[static_cast<std::size_t>(v)];
    ids.push_back(id);
    v = inst.other_end(id, v);
  }
  OptimumReport out{Objective::MinSum, dist[static_cast<std::size_t>(inst.target())]->cost, Solution(std::move(ids))};
  return out;
}

OptimumReport min_arborescence(const Instance& inst, const EdgeMask& allowed) {
  if (inst.mode() != Mode::Arborescence)
    throw std::invalid_argument("min_arborescence requires an arborescence-mode instance");
  std::vector<WeightedArc> arcs;
  for (const Edge& e : inst.edges()) {
    if (!allowed_edge(allowed, e.id)) continue;
    arcs.push_back({e.tail, e.head, edge_key(inst, e.id), e.id});
  }
  auto picked = edmonds(inst.node_count(), inst.root(), arcs);
  if (!picked) throw NoFeasibleSolution("some node is unreachable from the root");
  std::vector<EdgeId> ids;
  for (int k : *picked) ids.push_back(arcs[static_cast<std::size_t>(k)].origin);
  Solution sol(std::move(ids));
  Rational value = total_cost(inst, sol);
  return {Objective::MinSum, std::move(value), std::move(sol)};
}

OptimumReport min_sum(const Instance& inst, const EdgeMask& allowed) {
  return inst.mode() == Mode::Path ? shortest_path(inst, allowed) : min_arborescence(inst, allowed);
}

namespace {

void charge(std::uint64_t& steps, const BruteBudget& budget) {
  if (++steps > budget.max_steps) throw BudgetExceeded("enumeration step budget exceeded");
}

void guard_nodes(const Instance& inst, const BruteBudget& budget) {
  if (inst.node_count() > budget.max_nodes)
    throw BudgetExceeded("instance has " + std::to_string(inst.node_count()) + " nodes, budget is " +
                         std::to_string(budget.max_nodes));
}

// DFS over simple paths; `prune` may cut a branch given the partial edge list.
void enumerate_paths(const Instance& inst, const EdgeMask& allowed, const BruteBudget& budget,
                     const std::function<bool(const std::vector<EdgeId>&)>& on_path,
                     const std::function<bool(EdgeId, bool)>& step) {
  std::vector<char> on_stack(static_cast<std::size_t>(inst.node_count()), 0);
  std::vector<EdgeId> path;
  std::uint64_t steps = 0;
  bool stop = false;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (stop) return;
    charge(steps, budget);
    if (v == inst.target()) {
      std::vector<EdgeId> sorted = path;
      std::sort(sorted.begin(), sorted.end());
      if (!on_path(sorted)) stop = true;
      return;
    }
    for (EdgeId id : inst.out_edges(v)) {
      if (!allowed_edge(allowed, id)) continue;
      const NodeId w = inst.other_end(id, v);
      if (on_stack[static_cast<std::size_t>(w)]) continue;
      if (!step(id, true)) {
        step(id, false);
        continue;
      }
      on_stack[static_cast<std::size_t>(w)] = 1;
      path.push_back(id);
      dfs(w);
      path.pop_back();
      on_stack[static_cast<std::size_t>(w)] = 0;
      step(id, false);
      if (stop) return;
    }
  };
  on_stack[static_cast<std::size_t>(inst.source())] = 1;
  dfs(inst.source());
}

bool reaches_all(const Instance& inst, const std::vector<EdgeId>& in_edge) {
  const auto nodes = static_cast<std::size_t>(inst.node_count());
  std::vector<std::vector<NodeId>> children(nodes);
  for (std::size_t v = 0; v < nodes; ++v)
    if (in_edge[v] >= 0) children[static_cast<std::size_t>(inst.edge(in_edge[v]).tail)].push_back(static_cast<NodeId>(v));
  std::vector<NodeId> stack{inst.root()};
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : children[static_cast<std::size_t>(v)]) {
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == nodes;
}

void enumerate_arborescences(const Instance& inst, const EdgeMask& allowed, const BruteBudget& budget,
                             const std::function<bool(const std::vector<EdgeId>&)>& on_tree,
                             const std::function<bool(EdgeId, bool)>& step) {
  std::vector<NodeId> order;
  for (NodeId v = 0; v < inst.node_count(); ++v)
    if (v != inst.root()) order.push_back(v);
  std::vector<std::vector<EdgeId>> choices(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (EdgeId id : inst.in_edges(order[k]))
      if (allowed_edge(allowed, id) && inst.edge(id).tail != order[k]) choices[k].push_back(id);
    if (choices[k].empty()) return;
  }
  std::vector<EdgeId> in_edge(static_cast<std::size_t>(inst.node_count()), -1);
  std::uint64_t steps = 0;
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (stop) return;
    charge(steps, budget);
    if (k == order.size()) {
      if (!reaches_all(inst, in_edge)) return;
      std::vector<EdgeId> ids;
      for (EdgeId id : in_edge)
        if (id >= 0) ids.push_back(id);
      std::sort(ids.begin(), ids.end());
      if (!on_tree(ids)) stop = true;
      return;
    }
    for (EdgeId id : choices[k]) {
      if (!step(id, true)) {
        step(id, false);
        continue;
      }
      in_edge[static_cast<std::size_t>(order[k])] = id;
      dfs(k + 1);
      in_edge[static_cast<std::size_t>(order[k])] = -1;
      step(id, false);
      if (stop) return;
    }
  };
  dfs(0);
}

}  // namespace

void for_each_feasible(const Instance& inst, const std::function<bool(const std::vector<EdgeId>&)>& visit,
                       BruteBudget budget, const EdgeMask& allowed) {
  guard_nodes(inst, budget);
  auto no_prune = [](EdgeId, bool) { return true; };
  if (inst.mode() == Mode::Path)
    enumerate_paths(inst, allowed, budget, visit, no_prune);
  else
    enumerate_arborescences(inst, allowed, budget, visit, no_prune);
}

OptimumReport brute_minmax(const Instance& inst, BruteBudget budget) {
  guard_nodes(inst, budget);
  std::vector<Rational> load(static_cast<std::size_t>(inst.agent_count()), Rational(0));
  std::optional<Rational> best;
  Solution best_sol;

  // Loads only grow, so a partial solution strictly above the incumbent is dead.
  auto step = [&](EdgeId id, bool enter) {
    Rational& slot = load[static_cast<std::size_t>(inst.edge(id).owner - 1)];
    if (!enter) {
      slot -= inst.cost(id);
      return true;
    }
    slot += inst.cost(id);
    return !best || slot <= *best;
  };
  auto visit = [&](const std::vector<EdgeId>& ids) {
    Rational value = *std::max_element(load.begin(), load.end());
    Solution sol(ids);
    if (!best || value < *best || (value == *best && tie_break_less(sol, best_sol))) {
      best = std::move(value);
      best_sol = std::move(sol);
    }
    return true;
  };
  if (inst.mode() == Mode::Path)
    enumerate_paths(inst, {}, budget, visit, step);
  else
    enumerate_arborescences(inst, {}, budget, visit, step);
  if (!best) throw NoFeasibleSolution("no feasible solution");
  return {Objective::MinMax, std::move(*best), std::move(best_sol)};
}

namespace {

bool dominates_or_equal(const LoadVector& a, const LoadVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<LoadVector> pareto_filter(std::vector<LoadVector> candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<LoadVector> kept;
  for (auto& c : candidates) {
    bool dominated = false;
    for (const auto& k : kept)
      if (dominates_or_equal(k, c)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    std::erase_if(kept, [&](const LoadVector& k) { return dominates_or_equal(c, k); });
    kept.push_back(std::move(c));
  }
  return kept;
}

LoadVector add(const LoadVector& a, const LoadVector& b) {
  LoadVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

BlockChoice chain_minmax_exact(int agents, const std::vector<std::vector<LoadVector>>& blocks) {
  if (agents < 1) throw StructureError("agent count must be positive");
  if (blocks.empty()) throw StructureError("no blocks");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) throw StructureError("block " + std::to_string(k) + " has no options");
    for (const auto& v : blocks[k])
      if (v.size() != static_cast<std::size_t>(agents))
        throw StructureError("block " + std::to_string(k) + ": load vector length differs from agent count");
  }

  // frontier[k] = Pareto frontier of loads after the first k blocks.
  std::vector<std::vector<LoadVector>> frontier(blocks.size() + 1);
  frontier[0] = {LoadVector(static_cast<std::size_t>(agents), Rational(0))};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::vector<LoadVector> next;
    for (const auto& base : frontier[k])
      for (const auto& option : blocks[k]) next.push_back(add(base, option));
    frontier[k + 1] = pareto_filter(std::move(next));
  }
  Rational best;
  bool first = true;
  for (const auto& v : frontier.back()) {
    const Rational m = *std::max_element(v.begin(), v.end());
    if (first || m < best) best = m;
    first = false;
  }

  BlockChoice out{best, std::vector<int>(blocks.size(), -1)};
  LoadVector cap(static_cast<std::size_t>(agents), best);
  for (std::size_t k = blocks.size(); k-- > 0;) {
    for (std::size_t p = 0; p < blocks[k].size(); ++p) {
      LoadVector rest(cap.size());
      for (std::size_t i = 0; i < cap.size(); ++i) rest[i] = cap[i] - blocks[k][p][i];
      const bool fits = std::any_of(frontier[k].begin(), frontier[k].end(),
                                    [&](const LoadVector& prefix) { return dominates_or_equal(prefix, rest); });
      if (fits) {
        out.choice[k] = static_cast<int>(p);
        cap = std::move(rest);
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<LoadVector>> block_loads(const Instance& inst, const BlockIndexing& blocks) {
  if (blocks.agents != inst.agent_count()) throw StructureError("indexing agent count differs from instance");
  std::vector<char> seen(static_cast<std::size_t>(inst.edge_count()), 0);
  std::vector<std::vector<LoadVector>> out;
  EdgeId last = -1;
  for (const auto& block : blocks.blocks) {
    auto& options = out.emplace_back();
    for (const auto& route : block) {
      if (!route.leftward.empty()) throw StructureError("routes with leftward edges are not path blocks");
      if (route.rightward.empty()) throw StructureError("empty route");
      LoadVector load(static_cast<std::size_t>(inst.agent_count()), Rational(0));
      for (EdgeId id : route.rightward) {
        if (id < 0 || id >= inst.edge_count()) throw StructureError("route edge id out of range");
        if (seen[static_cast<std::size_t>(id)]) throw StructureError("edge shared between routes");
        if (id <= last) throw StructureError("route edge ids must increase with block and option");
        seen[static_cast<std::size_t>(id)] = 1;
        last = id;
        const Edge& e = inst.edge(id);
        load[static_cast<std::size_t>(e.owner - 1)] += e.cost;
      }
      options.push_back(std::move(load));
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw StructureError("edges outside every block");
  return out;
}

OptimumReport chain_minmax_exact(const Instance& inst, const BlockIndexing& blocks) {
  if (inst.mode() != Mode::Path) throw StructureError("block DP needs a path-mode instance");
  const auto choice = chain_minmax_exact(inst.agent_count(), block_loads(inst, blocks));
  std::vector<EdgeId> ids;
  for (std::size_t k = 0; k < choice.choice.size(); ++k) {
    const auto& route = blocks.blocks[k][static_cast<std::size_t>(choice.choice[k])];
    ids.insert(ids.end(), route.rightward.begin(), route.rightward.end());
  }
  return {Objective::MinMax, choice.value, Solution(std::move(ids))};
}

}  // namespace mmech
