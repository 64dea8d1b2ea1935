#pragma once

#include "mmech/graph.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mmech {

struct BlockIndexing;

enum class Objective { MinSum, MinMax };

const char* to_string(Objective objective);

struct OptimumReport {
  Objective objective = Objective::MinSum;
  Rational value;
  Solution witness;
};

/// Per-edge availability; an empty mask allows every edge.
using EdgeMask = std::vector<char>;

/// Mask allowing every edge except those owned by `agent`.
EdgeMask mask_without_agent(const Instance& inst, AgentId agent);

/// Min-sum s-t path. Among equal-cost paths the witness is the
/// tie_break_less-minimal one. Throws NoFeasibleSolution when disconnected.
OptimumReport shortest_path(const Instance& inst, const EdgeMask& allowed = {});

/// Min-sum spanning arborescence (Chu-Liu/Edmonds contraction), same tie-break.
OptimumReport min_arborescence(const Instance& inst, const EdgeMask& allowed = {});

/// Dispatches on the instance mode.
OptimumReport min_sum(const Instance& inst, const EdgeMask& allowed = {});

struct BruteBudget {
  int max_nodes = 14;
  std::uint64_t max_steps = 20'000'000;
};

/// Calls `visit` with every feasible solution (as sorted edge ids) until it
/// returns false. Path mode: every simple s-t path; arborescence mode: every
/// spanning arborescence. Throws BudgetExceeded past `budget`.
void for_each_feasible(const Instance& inst, const std::function<bool(const std::vector<EdgeId>&)>& visit,
                       BruteBudget budget = {}, const EdgeMask& allowed = {});

/// Exact min-max optimum by exhaustive enumeration. Refuses (BudgetExceeded)
/// instead of approximating.
OptimumReport brute_minmax(const Instance& inst, BruteBudget budget = {});

/// Per-agent cost vector (length n, agent i at index i-1).
using LoadVector = std::vector<Rational>;

struct BlockChoice {
  Rational value;
  std::vector<int> choice;  // chosen option index per block
};

/// Exact min-max over one option per block, where option p of block k adds
/// blocks[k][p] to the agents' loads. Dynamic programming over the Pareto
/// frontier of accumulated loads. Among optimal choices returns the one that
/// prefers the lowest option index in the last block, then the one before...
/// Throws StructureError on empty blocks or vectors of the wrong length.
BlockChoice chain_minmax_exact(int agents, const std::vector<std::vector<LoadVector>>& blocks);

/// Same, on a block-structured instance. The witness follows tie_break_less
/// provided edge ids increase with block and option index (true for the
/// generators); otherwise StructureError.
OptimumReport chain_minmax_exact(const Instance& inst, const BlockIndexing& blocks);

/// Per-option load vectors of a block-structured instance under its current costs.
std::vector<std::vector<LoadVector>> block_loads(const Instance& inst, const BlockIndexing& blocks);

}  // namespace mmech
