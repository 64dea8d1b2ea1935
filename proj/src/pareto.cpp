#include "mmech/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mmech {

std::vector<ObjectiveVector> encode_objectives(const Instance& inst) {
  std::vector<ObjectiveVector> out;
  out.reserve(static_cast<std::size_t>(inst.edge_count()));
  for (const Edge& e : inst.edges()) {
    ObjectiveVector w(static_cast<std::size_t>(inst.agent_count()), Rational(0));
    w[static_cast<std::size_t>(e.owner - 1)] = e.cost;
    out.push_back(std::move(w));
  }
  return out;
}

ObjectiveVector path_objectives(const std::vector<ObjectiveVector>& weights, std::span<const EdgeId> ids) {
  if (weights.empty()) return {};
  ObjectiveVector sum(weights.front().size(), Rational(0));
  for (EdgeId id : ids)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += weights[static_cast<std::size_t>(id)][k];
  return sum;
}

PtasInput preprocess(const Instance& inst, const Rational& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (inst.mode() != Mode::Path) throw std::invalid_argument("the PTAS handles path-mode instances only");
  const OptimumReport sp = shortest_path(inst);
  const int n = inst.agent_count();

  PtasConfig config;
  config.epsilon = eps;
  config.shortest_path = sp.value;
  config.short_circuit = sgn(sp.value) == 0;
  config.delta = config.short_circuit ? Rational(0) : Rational(eps * sp.value / (n * n));

  std::vector<Edge> kept;
  std::vector<EdgeId> original;
  for (const Edge& e : inst.edges()) {
    if (e.cost > sp.value) continue;
    Edge copy = e;
    copy.id = static_cast<EdgeId>(kept.size());
    kept.push_back(std::move(copy));
    original.push_back(e.id);
  }
  Instance pruned(inst.directed(), inst.node_count(), Mode::Path, inst.source(), inst.target(), n, std::move(kept));

  auto weights = encode_objectives(pruned);
  config.ratio_bound = 1;
  if (!config.short_circuit) {
    for (auto& w : weights) {
      for (auto& c : w)
        if (c < config.delta) c = config.delta;
      const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
      const Rational r = *hi / *lo;
      if (r > config.ratio_bound) config.ratio_bound = r;
    }
  }
  return {std::move(pruned), std::move(original), std::move(weights), std::move(config), sp.witness};
}

std::vector<EdgeId> ParetoSet::path(const Instance& inst, int label) const {
  std::vector<EdgeId> walk;
  for (int k = label; arena.at(static_cast<std::size_t>(k)).predecessor >= 0;
       k = arena[static_cast<std::size_t>(k)].predecessor)
    walk.push_back(arena[static_cast<std::size_t>(k)].via);
  std::reverse(walk.begin(), walk.end());

  // Loop erasure: whenever a node repeats, drop the cycle since its first visit.
  std::vector<NodeId> nodes{inst.source()};
  std::vector<EdgeId> edges;
  std::map<NodeId, std::size_t> position{{inst.source(), 0}};
  for (EdgeId id : walk) {
    const NodeId next = inst.other_end(id, nodes.back());
    auto it = position.find(next);
    if (it != position.end()) {
      const std::size_t keep = it->second;
      for (std::size_t k = keep + 1; k < nodes.size(); ++k) position.erase(nodes[k]);
      nodes.resize(keep + 1);
      edges.resize(keep);
      continue;
    }
    position[next] = nodes.size();
    nodes.push_back(next);
    edges.push_back(id);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

ParetoSet pareto_eps(const Instance& inst, const std::vector<ObjectiveVector>& weights, const Rational& eps,
                     const Rational& delta) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (sgn(delta) <= 0) throw std::invalid_argument("delta must be positive");
  if (weights.size() != static_cast<std::size_t>(inst.edge_count()))
    throw std::invalid_argument("one weight vector per edge expected");
  const auto n = static_cast<std::size_t>(inst.agent_count());
  const std::size_t bucketed = n - 1;
  const int rounds = std::max(inst.node_count() - 1, 1);

  // Within one cell two values differ by at most a factor `base`; shrinking it
  // slightly keeps that true despite floating-point rounding of the logs.
  const double exact_base = std::pow(1.0 + to_double(eps), 1.0 / rounds);
  const double log_base = std::log(1.0 + (exact_base - 1.0) * (1.0 - 1e-6));

  auto bucket_of = [&](const Rational& v) -> long {
    if (sgn(v) == 0) return -1;
    if (v <= delta) return 0;
    const double ratio = to_double(Rational(v / delta));
    return std::max(1L, static_cast<long>(std::ceil(std::log(ratio) / log_base)));
  };

  ParetoSet out;
  std::vector<std::map<std::vector<long>, int>> cells(static_cast<std::size_t>(inst.node_count()));
  ParetoLabel start{inst.source(), std::vector<long>(bucketed, -1), ObjectiveVector(n, Rational(0)), -1, -1};
  out.arena.push_back(start);
  cells[static_cast<std::size_t>(inst.source())][start.bucket_index] = 0;

  std::vector<int> frontier{0};
  for (int round = 0; round < rounds && !frontier.empty(); ++round) {
    std::vector<int> next;
    for (int idx : frontier) {
      const ParetoLabel from = out.arena[static_cast<std::size_t>(idx)];
      if (cells[static_cast<std::size_t>(from.node)][from.bucket_index] != idx) continue;  // superseded
      if (from.node == inst.target()) continue;
      for (EdgeId id : inst.out_edges(from.node)) {
        ParetoLabel cand;
        cand.node = inst.other_end(id, from.node);
        cand.cost = from.cost;
        for (std::size_t k = 0; k < n; ++k) cand.cost[k] += weights[static_cast<std::size_t>(id)][k];
        cand.bucket_index.resize(bucketed);
        for (std::size_t k = 0; k < bucketed; ++k) cand.bucket_index[k] = bucket_of(cand.cost[k]);
        cand.predecessor = idx;
        cand.via = id;
        auto& cell_map = cells[static_cast<std::size_t>(cand.node)];
        auto it = cell_map.find(cand.bucket_index);
        if (it != cell_map.end() && !(cand.cost.back() < out.arena[static_cast<std::size_t>(it->second)].cost.back()))
          continue;
        const int new_idx = static_cast<int>(out.arena.size());
        cell_map[cand.bucket_index] = new_idx;
        out.arena.push_back(std::move(cand));
        next.push_back(new_idx);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& cell_map : cells) out.table_size += cell_map.size();
  for (const auto& [key, idx] : cells[static_cast<std::size_t>(inst.target())]) out.at_target.push_back(idx);
  return out;
}

PtasResult minmax_ptas(const Instance& inst, const Rational& eps) {
  PtasInput in = preprocess(inst, eps);
  PtasResult result;
  result.config = in.config;

  auto better = [&](const Rational& value, const Solution& sol) {
    return value < result.report.value || (value == result.report.value && tie_break_less(sol, result.report.witness));
  };
  result.report = {Objective::MinMax, cost_summary(inst, in.shortest).max_cost, in.shortest};
  result.candidates = 1;
  if (in.config.short_circuit || inst.agent_count() == 1) return result;

  const ParetoSet set = pareto_eps(in.pruned, in.weights, eps, in.config.delta);
  result.label_table_size = set.table_size;
  for (int label : set.at_target) {
    std::vector<EdgeId> ids;
    for (EdgeId id : set.path(in.pruned, label)) ids.push_back(in.original_id[static_cast<std::size_t>(id)]);
    Solution sol(std::move(ids));
    Rational value = cost_summary(inst, sol).max_cost;
    ++result.candidates;
    if (better(value, sol)) result.report = {Objective::MinMax, std::move(value), std::move(sol)};
  }
  return result;
}

}  // namespace mmech
