#pragma once

#include "mmech/graph.hpp"

#include <cstdint>
#include <random>

namespace mmech {

using Rng = std::mt19937_64;

/// Portable uniform integer in [lo, hi].
long long uniform_int(Rng& rng, long long lo, long long hi);

enum class CostDistribution {
  SmallFractions,  // a/b with a in 0..20, b in 1..4
  Integers1To10,   // integers 1..10
};

Rational sample_cost(Rng& rng, CostDistribution dist);

struct SampleSpec {
  Mode mode = Mode::Path;
  bool directed = false;  // forced true in arborescence mode
  int min_nodes = 3;
  int max_nodes = 8;
  int min_agents = 1;
  int max_agents = 3;
  /// Extra edges beyond the connecting skeleton, as a multiple of the node count.
  double extra_edge_factor = 1.0;
  CostDistribution costs = CostDistribution::SmallFractions;
  /// Resample until no agent is pivotal-infeasible (Clarke payments defined).
  bool require_payable = false;
};

/// Random feasible instance: a random spanning skeleton (a source-target path
/// or an arborescence) plus extra random edges, parallel edges allowed.
Instance sample_instance(Rng& rng, const SampleSpec& spec);

/// Per-trial generator derived from a run seed, independent of scheduling.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace mmech
