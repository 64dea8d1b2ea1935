#pragma once

#include "mmech/solvers.hpp"
#include "mmech/vcg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mmech {

/// Exact min-max on CHAIN / EXPANDEDCHAIN instances via the block DP.
/// Throws StructureError on any other instance.
AllocationAlgorithm exact_chain_algorithm();

/// Exact min-max by enumeration, any mode.
AllocationAlgorithm brute_minmax_algorithm(BruteBudget budget = {});

/// The (1+eps)^2 min-max path approximation.
AllocationAlgorithm ptas_algorithm(const Rational& eps);

/// Ignores the reported costs: min-sum solution under unit costs.
AllocationAlgorithm fixed_algorithm();

/// Min-sum under 1/(1+t(e)); prefers expensive edges, so it is not monotone.
AllocationAlgorithm contrarian_algorithm();

/// Looks up an algorithm by its name; `eps` only matters for "ptas".
/// Throws std::invalid_argument for unknown names.
AllocationAlgorithm make_algorithm(std::string_view name, const Rational& eps = Rational(1, 4));

std::vector<std::string> algorithm_names();

}  // namespace mmech
