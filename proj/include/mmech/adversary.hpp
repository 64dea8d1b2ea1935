#pragma once

#include "mmech/audit.hpp"
#include "mmech/chains.hpp"
#include "mmech/vcg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmech {

/// One driver step. Step 0 is the initial run on the all-ones profile.
struct AdversaryStep {
  AgentId transformed = 0;  // 0 for the initial run
  Solution allocation;
  bool lemma1_stable = true;      // transformed agent kept exactly its selected edges
  bool structure_stable = true;   // same solution (path) / heavy FULLPATH prefix kept (dmst)
};

struct RatioWitness {
  std::vector<Rational> final_costs;  // t*
  Solution final_allocation;          // A(t*)
  Rational algorithm_cost;            // cost(A(t*), t*)
  Solution upper_bound_solution;      // explicit redistribution
  Rational opt_upper_bound;           // its cost under t*
  Rational certified_ratio;           // algorithm_cost / opt_upper_bound
  Rational closed_form;               // ceil(l*/n)(1+eps) + 2 eps l   (path) / + 4 eps n l (dmst)
  /// n - 4n^3/l, only with the default eps.
  std::optional<Rational> theory_bound;
};

struct AdversaryReport {
  std::string algorithm;
  ChainMode mode = ChainMode::Path;
  ChainSpec spec;
  Rational eps;
  std::vector<int> selections;  // l_i, index i-1
  AgentId heavy = 1;            // i*
  std::vector<AgentId> order;   // transformation order
  std::vector<AdversaryStep> trace;
  std::optional<RatioWitness> ratio;
  std::optional<ViolationWitness> violation;
};

/// Initial all-ones instance the driver runs on, with its block indexing.
ChainInstance adversary_instance(const ChainSpec& spec, ChainMode mode);

/// Executes the lower-bound construction against `alg`. Ends with exactly one
/// of a RatioWitness or a monotonicity ViolationWitness. Throws
/// FeasibilityError if `alg` returns an infeasible solution, and
/// std::invalid_argument unless spec.base_cost == 1.
AdversaryReport run_adversary(const AllocationAlgorithm& alg, const ChainSpec& spec, ChainMode mode);

struct UpperBound {
  Solution solution;
  Rational cost;
  Rational closed_form;
};

/// Explicit feasible solution for profile `final_profile`: the blocks where
/// `heavy` was initially selected are handed round-robin to all agents, every
/// other block keeps an initially selected agent. `initial` is the first
/// allocation on the all-ones profile.
UpperBound opt_upper_bound(ChainMode mode, const Instance& final_profile, const BlockIndexing& idx,
                           const Solution& initial, AgentId heavy, const Rational& eps);

/// Re-checks every number in the report against the regenerated instance
/// structure without running any algorithm.
bool verify_adversary_report(const AdversaryReport& report);

}  // namespace mmech
