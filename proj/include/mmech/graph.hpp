#pragma once

#include "mmech/errors.hpp"
#include "mmech/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace mmech {

using NodeId = int;
using EdgeId = int;
using AgentId = int;  // agents are numbered 1..n

enum class Mode { Path, Arborescence };

const char* to_string(Mode mode);

struct Edge {
  EdgeId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  AgentId owner = 1;
  Rational cost;
};

/// Agent-partitioned multigraph with one designated feasibility mode.
///
/// Edge ids are dense (edge `k` has id `k`), nodes are `0..nodes-1`, owners are
/// `1..agents`. Parallel edges are allowed. Path mode asks for a simple path
/// from `source()` to `target()`; arborescence mode asks for a spanning
/// arborescence rooted at `root()` and requires a directed graph. An agent may
/// own no edge at all.
///
/// Instances are immutable; cost changes produce a new instance sharing the
/// same structure.
class Instance {
 public:
  /// Throws InvalidInstance when any invariant is violated.
  Instance(bool directed, int nodes, Mode mode, NodeId source, NodeId target_or_root, int agents,
           std::vector<Edge> edges);

  bool directed() const { return directed_; }
  int node_count() const { return nodes_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int agent_count() const { return agents_; }
  Mode mode() const { return mode_; }
  NodeId source() const { return source_; }
  NodeId target() const { return target_or_root_; }
  NodeId root() const { return target_or_root_; }
  NodeId target_or_root() const { return target_or_root_; }

  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::span<const Edge> edges() const { return edges_; }
  const Rational& cost(EdgeId id) const { return edge(id).cost; }
  std::vector<Rational> costs() const;

  /// Edge ids owned by `agent`, ascending.
  std::span<const EdgeId> edges_of(AgentId agent) const;
  /// Edges usable when leaving `node`: outgoing if directed, incident otherwise.
  std::span<const EdgeId> out_edges(NodeId node) const;
  /// Edges entering `node` (directed graphs); incident edges otherwise.
  std::span<const EdgeId> in_edges(NodeId node) const;
  /// The endpoint of `id` opposite to `from` (for directed edges, the head).
  NodeId other_end(EdgeId id, NodeId from) const;

  Instance with_costs(std::vector<Rational> costs) const;
  Instance with_edge_costs(std::span<const std::pair<EdgeId, Rational>> changes) const;

 private:
  void index();

  bool directed_;
  int nodes_;
  Mode mode_;
  NodeId source_;
  NodeId target_or_root_;
  int agents_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> by_agent_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// A set of edge ids, kept sorted and duplicate-free.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<EdgeId> ids);

  std::span<const EdgeId> edge_ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId id) const;

  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::vector<EdgeId> ids_;
};

/// Deterministic order used to break ties between equal-value optima.
/// Compares edge-id sets by their largest differing id: the set that does not
/// contain it is smaller. Equivalently, smaller sum of 2^id wins.
bool tie_break_less(const Solution& a, const Solution& b);

struct CostSummary {
  std::vector<Rational> per_agent;  // index i-1 holds agent i
  Rational max_cost;
  Rational sum_cost;
};

/// Throws MalformedSolution if `sol` names an edge id not in `inst`.
void check_edge_ids(const Instance& inst, const Solution& sol);

/// True iff `sol` is a simple source-target path (path mode) or a spanning
/// arborescence rooted at root (arborescence mode).
bool validate_solution(const Instance& inst, const Solution& sol);

Rational agent_cost(const Instance& inst, const Solution& sol, AgentId agent);
CostSummary cost_summary(const Instance& inst, const Solution& sol);

/// Selected edges of `agent`, i.e. A_i(x).
std::vector<EdgeId> agent_selection(const Instance& inst, const Solution& sol, AgentId agent);

/// Cost of `sol` for `agent` under an alternative cost vector indexed by edge id.
Rational agent_cost_under(const Instance& inst, std::span<const Rational> costs, const Solution& sol,
                          AgentId agent);

}  // namespace mmech
