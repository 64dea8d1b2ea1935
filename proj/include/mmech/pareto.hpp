#pragma once

#include "mmech/graph.hpp"
#include "mmech/solvers.hpp"

#include <vector>

namespace mmech {

/// One coordinate per agent.
using ObjectiveVector = std::vector<Rational>;

/// w(e) = t_i(e) on the owner's coordinate i, zero elsewhere; indexed by edge id.
std::vector<ObjectiveVector> encode_objectives(const Instance& inst);

/// Component-wise sum of the edge vectors of `ids`.
ObjectiveVector path_objectives(const std::vector<ObjectiveVector>& weights, std::span<const EdgeId> ids);

struct PtasConfig {
  Rational epsilon;
  Rational delta;          // eps * SP / n^2
  Rational ratio_bound;    // R_w of the modified weights, <= n^2 / eps
  Rational shortest_path;  // SP(t)
  bool short_circuit = false;  // SP(t) == 0: the shortest path is optimal
};

struct PtasInput {
  /// Edges costlier than SP(t) removed, ids re-densified.
  Instance pruned;
  /// pruned edge id -> original edge id
  std::vector<EdgeId> original_id;
  /// Modified weights w'_k(e) = max(delta, w_k(e)) per pruned edge.
  std::vector<ObjectiveVector> weights;
  PtasConfig config;
  /// Shortest path witness in original edge ids.
  Solution shortest;
};

/// Throws std::invalid_argument for eps <= 0 or a non-path instance;
/// NoFeasibleSolution when the target is unreachable.
PtasInput preprocess(const Instance& inst, const Rational& eps);

struct ParetoLabel {
  NodeId node = 0;
  /// Geometric bucket of objectives 1..n-1; -1 marks an exact zero.
  std::vector<long> bucket_index;
  /// Objective vector of the walk this label represents.
  ObjectiveVector cost;
  int predecessor = -1;  // arena index
  EdgeId via = -1;
};

struct ParetoSet {
  /// Every label ever stored; predecessors point into it.
  std::vector<ParetoLabel> arena;
  /// Arena indices of the labels kept at the target.
  std::vector<int> at_target;
  /// Cells holding a label when the DP finished, over all nodes.
  std::size_t table_size = 0;

  /// Simple source-target path of a label (cycles of its walk erased), in the
  /// ids of the instance the set was computed on.
  std::vector<EdgeId> path(const Instance& inst, int label) const;
};

/// (1+eps)-Pareto set of source-target paths under `weights` (all positive).
/// Objectives 1..n-1 are bucketed geometrically with base (1+eps)^(1/(nu-1))
/// above `delta`; the last objective is kept exactly minimal per cell.
/// nu-1 rounds of relaxation over all edges.
ParetoSet pareto_eps(const Instance& inst, const std::vector<ObjectiveVector>& weights, const Rational& eps,
                     const Rational& delta);

struct PtasResult {
  OptimumReport report;  // value under the original costs
  PtasConfig config;
  std::size_t label_table_size = 0;
  std::size_t candidates = 0;
};

/// Min-max path within (1+eps)^2 of optimal.
PtasResult minmax_ptas(const Instance& inst, const Rational& eps);

}  // namespace mmech
