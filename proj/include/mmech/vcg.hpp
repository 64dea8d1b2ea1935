#pragma once

#include "mmech/graph.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mmech {

/// Deterministic allocation rule under test. Must be a pure function of the
/// instance and always return a feasible solution.
struct AllocationAlgorithm {
  std::string name;
  std::function<Solution(const Instance&)> run;

  Solution operator()(const Instance& inst) const { return run(inst); }
};

struct MechanismOutcome {
  Solution allocation;
  std::vector<Rational> payments;  // index i-1 holds agent i
};

struct Mechanism {
  std::string name;
  std::function<MechanismOutcome(const Instance&)> run;

  MechanismOutcome operator()(const Instance& inst) const { return run(inst); }
};

/// Social-cost minimiser: shortest path or min-cost arborescence per mode.
Solution vcg_allocate(const Instance& inst);

/// Clarke pivot payments P_i = SC_{-i} - (SC - t_i(alloc)), where SC_{-i} is
/// the min-sum optimum with all of agent i's edges removed. Throws
/// PivotalInfeasible when removing agent i leaves nothing feasible.
std::vector<Rational> clarke_payments(const Instance& inst, const Solution& alloc);

MechanismOutcome run_vcg(const Instance& inst);

/// P_i - t_i(x) for the instance's own costs.
Rational utility(const Instance& inst, const MechanismOutcome& outcome, AgentId agent);

AllocationAlgorithm vcg_algorithm();
Mechanism vcg_mechanism();

}  // namespace mmech
