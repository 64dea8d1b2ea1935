#include "mmech/graph.hpp"

#include <algorithm>
#include <string>

namespace mmech {

const char* to_string(Mode mode) { return mode == Mode::Path ? "path" : "arborescence"; }

Instance::Instance(bool directed, int nodes, Mode mode, NodeId source, NodeId target_or_root, int agents,
                   std::vector<Edge> edges)
    : directed_(directed),
      nodes_(nodes),
      mode_(mode),
      source_(source),
      target_or_root_(target_or_root),
      agents_(agents),
      edges_(std::move(edges)) {
  if (nodes_ <= 0) throw InvalidInstance("node count must be positive");
  if (agents_ <= 0) throw InvalidInstance("agent count must be positive");
  auto valid_node = [&](NodeId v) { return v >= 0 && v < nodes_; };
  if (!valid_node(source_) || !valid_node(target_or_root_))
    throw InvalidInstance("designated node out of range");
  if (mode_ == Mode::Arborescence) {
    if (!directed_) throw InvalidInstance("arborescence mode requires a directed graph");
    if (source_ != target_or_root_) throw InvalidInstance("arborescence mode: source must equal root");
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const std::string where = "edge " + std::to_string(k);
    if (e.id != static_cast<EdgeId>(k)) throw InvalidInstance(where + ": ids must be dense and ordered");
    if (!valid_node(e.tail) || !valid_node(e.head)) throw InvalidInstance(where + ": endpoint out of range");
    if (e.owner < 1 || e.owner > agents_) throw InvalidInstance(where + ": owner out of range");
    if (sgn(e.cost) < 0) throw InvalidInstance(where + ": negative cost");
  }
  index();
}

void Instance::index() {
  by_agent_.assign(static_cast<std::size_t>(agents_) + 1, {});
  out_.assign(static_cast<std::size_t>(nodes_), {});
  in_.assign(static_cast<std::size_t>(nodes_), {});
  for (const Edge& e : edges_) {
    by_agent_[static_cast<std::size_t>(e.owner)].push_back(e.id);
    out_[static_cast<std::size_t>(e.tail)].push_back(e.id);
    in_[static_cast<std::size_t>(e.head)].push_back(e.id);
    if (!directed_ && e.tail != e.head) {
      out_[static_cast<std::size_t>(e.head)].push_back(e.id);
      in_[static_cast<std::size_t>(e.tail)].push_back(e.id);
    }
  }
}

std::vector<Rational> Instance::costs() const {
  std::vector<Rational> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(e.cost);
  return out;
}

std::span<const EdgeId> Instance::edges_of(AgentId agent) const {
  if (agent < 1 || agent > agents_) throw std::out_of_range("agent id out of range");
  return by_agent_[static_cast<std::size_t>(agent)];
}

std::span<const EdgeId> Instance::out_edges(NodeId node) const { return out_.at(static_cast<std::size_t>(node)); }

std::span<const EdgeId> Instance::in_edges(NodeId node) const { return in_.at(static_cast<std::size_t>(node)); }

NodeId Instance::other_end(EdgeId id, NodeId from) const {
  const Edge& e = edge(id);
  if (directed_) return e.head;
  return e.tail == from ? e.head : e.tail;
}

Instance Instance::with_costs(std::vector<Rational> costs) const {
  if (costs.size() != edges_.size()) throw InvalidInstance("cost vector length mismatch");
  Instance copy = *this;
  for (std::size_t k = 0; k < costs.size(); ++k) {
    if (sgn(costs[k]) < 0) throw InvalidInstance("negative cost on edge " + std::to_string(k));
    copy.edges_[k].cost = std::move(costs[k]);
  }
  return copy;
}

Instance Instance::with_edge_costs(std::span<const std::pair<EdgeId, Rational>> changes) const {
  std::vector<Rational> c = costs();
  for (const auto& [id, value] : changes) {
    if (id < 0 || id >= edge_count()) throw InvalidInstance("unknown edge id " + std::to_string(id));
    c[static_cast<std::size_t>(id)] = value;
  }
  return with_costs(std::move(c));
}

Solution::Solution(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool Solution::contains(EdgeId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

bool tie_break_less(const Solution& a, const Solution& b) {
  auto ia = a.edge_ids().rbegin(), ea = a.edge_ids().rend();
  auto ib = b.edge_ids().rbegin(), eb = b.edge_ids().rend();
  while (ia != ea && ib != eb) {
    if (*ia != *ib) return *ia < *ib;  // the side holding the larger id loses
    ++ia;
    ++ib;
  }
  return ia == ea && ib != eb;
}

void check_edge_ids(const Instance& inst, const Solution& sol) {
  for (EdgeId id : sol.edge_ids())
    if (id < 0 || id >= inst.edge_count())
      throw MalformedSolution("solution references unknown edge id " + std::to_string(id));
}

namespace {

bool is_simple_path(const Instance& inst, const Solution& sol) {
  const NodeId s = inst.source(), t = inst.target();
  std::vector<char> used(static_cast<std::size_t>(inst.edge_count()), 0);
  std::vector<char> seen(static_cast<std::size_t>(inst.node_count()), 0);
  NodeId cur = s;
  seen[static_cast<std::size_t>(s)] = 1;
  std::size_t walked = 0;
  while (true) {
    EdgeId next = -1;
    int candidates = 0;
    for (EdgeId id : inst.out_edges(cur)) {
      if (!sol.contains(id) || used[static_cast<std::size_t>(id)]) continue;
      ++candidates;
      next = id;
    }
    if (cur == t) {
      if (candidates != 0) return false;
      break;
    }
    if (candidates != 1) return false;
    used[static_cast<std::size_t>(next)] = 1;
    ++walked;
    cur = inst.other_end(next, cur);
    if (seen[static_cast<std::size_t>(cur)]) return false;
    seen[static_cast<std::size_t>(cur)] = 1;
  }
  return walked == sol.size();
}

bool is_arborescence(const Instance& inst, const Solution& sol) {
  const auto nodes = static_cast<std::size_t>(inst.node_count());
  std::vector<int> indeg(nodes, 0);
  std::vector<std::vector<NodeId>> children(nodes);
  for (EdgeId id : sol.edge_ids()) {
    const Edge& e = inst.edge(id);
    ++indeg[static_cast<std::size_t>(e.head)];
    children[static_cast<std::size_t>(e.tail)].push_back(e.head);
  }
  for (std::size_t v = 0; v < nodes; ++v) {
    const int want = static_cast<NodeId>(v) == inst.root() ? 0 : 1;
    if (indeg[v] != want) return false;
  }
  std::vector<char> seen(nodes, 0);
  std::vector<NodeId> stack{inst.root()};
  seen[static_cast<std::size_t>(inst.root())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : children[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == nodes;
}

}  // namespace

bool validate_solution(const Instance& inst, const Solution& sol) {
  check_edge_ids(inst, sol);
  return inst.mode() == Mode::Path ? is_simple_path(inst, sol) : is_arborescence(inst, sol);
}

Rational agent_cost(const Instance& inst, const Solution& sol, AgentId agent) {
  check_edge_ids(inst, sol);
  Rational total = 0;
  for (EdgeId id : sol.edge_ids())
    if (inst.edge(id).owner == agent) total += inst.cost(id);
  return total;
}

CostSummary cost_summary(const Instance& inst, const Solution& sol) {
  check_edge_ids(inst, sol);
  CostSummary out;
  out.per_agent.assign(static_cast<std::size_t>(inst.agent_count()), Rational(0));
  for (EdgeId id : sol.edge_ids()) {
    const Edge& e = inst.edge(id);
    out.per_agent[static_cast<std::size_t>(e.owner - 1)] += e.cost;
  }
  out.max_cost = 0;
  out.sum_cost = 0;
  for (const Rational& c : out.per_agent) {
    if (c > out.max_cost) out.max_cost = c;
    out.sum_cost += c;
  }
  return out;
}

std::vector<EdgeId> agent_selection(const Instance& inst, const Solution& sol, AgentId agent) {
  std::vector<EdgeId> out;
  for (EdgeId id : sol.edge_ids())
    if (inst.edge(id).owner == agent) out.push_back(id);
  return out;
}

Rational agent_cost_under(const Instance& inst, std::span<const Rational> costs, const Solution& sol,
                          AgentId agent) {
  Rational total = 0;
  for (EdgeId id : sol.edge_ids())
    if (inst.edge(id).owner == agent) total += costs[static_cast<std::size_t>(id)];
  return total;
}

}  // namespace mmech
