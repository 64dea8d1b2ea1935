#include "mmech/vcg.hpp"

#include "mmech/solvers.hpp"

namespace mmech {

Solution vcg_allocate(const Instance& inst) { return min_sum(inst).witness; }

std::vector<Rational> clarke_payments(const Instance& inst, const Solution& alloc) {
  const CostSummary summary = cost_summary(inst, alloc);
  std::vector<Rational> payments(static_cast<std::size_t>(inst.agent_count()), Rational(0));
  for (AgentId i = 1; i <= inst.agent_count(); ++i) {
    const Rational& own = summary.per_agent[static_cast<std::size_t>(i - 1)];
    Rational without;
    if (agent_selection(inst, alloc, i).empty()) {
      // alloc stays feasible and optimal once i's edges are gone.
      without = summary.sum_cost;
    } else {
      try {
        without = min_sum(inst, mask_without_agent(inst, i)).value;
      } catch (const NoFeasibleSolution&) {
        throw PivotalInfeasible(i);
      }
    }
    payments[static_cast<std::size_t>(i - 1)] = without - (summary.sum_cost - own);
  }
  return payments;
}

MechanismOutcome run_vcg(const Instance& inst) {
  Solution alloc = vcg_allocate(inst);
  auto payments = clarke_payments(inst, alloc);
  return {std::move(alloc), std::move(payments)};
}

Rational utility(const Instance& inst, const MechanismOutcome& outcome, AgentId agent) {
  return outcome.payments.at(static_cast<std::size_t>(agent - 1)) - agent_cost(inst, outcome.allocation, agent);
}

AllocationAlgorithm vcg_algorithm() { return {"vcg", vcg_allocate}; }

Mechanism vcg_mechanism() { return {"vcg", run_vcg}; }

}  // namespace mmech
