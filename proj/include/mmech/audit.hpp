#pragma once

#include "mmech/graph.hpp"
#include "mmech/sampling.hpp"
#include "mmech/vcg.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mmech {

/// New costs for some edges of one agent: t'_i, with t_{-i} unchanged.
struct Perturbation {
  AgentId agent = 1;
  std::vector<std::pair<EdgeId, Rational>> new_costs;
};

/// Throws std::invalid_argument if the perturbation touches another agent's
/// edge, an unknown edge, or sets a negative cost.
void check_perturbation(const Instance& inst, const Perturbation& pert);
Instance apply_perturbation(const Instance& inst, const Perturbation& pert);

/// The four terms of weak monotonicity for agent i:
///   t_i(x) + t'_i(x') <= t_i(x') + t'_i(x).
struct MonotonicityTerms {
  Rational t_x;
  Rational tp_xp;
  Rational t_xp;
  Rational tp_x;

  bool holds() const { return t_x + tp_xp <= t_xp + tp_x; }
};

/// P_i(t) - t_i(x) >= P_i(t~) - t_i(x~), all costs under the true type t_i.
struct UtilityTerms {
  Rational payment_truth;
  Rational cost_truth;
  Rational payment_report;
  Rational cost_report;

  bool holds() const { return payment_truth - cost_truth >= payment_report - cost_report; }
};

enum class ViolationKind { WeakMonotonicity, Truthfulness, Lemma1Stability };

const char* to_string(ViolationKind kind);

/// Self-contained evidence of a violated inequality; see verify_witness.
struct ViolationWitness {
  ViolationKind kind = ViolationKind::WeakMonotonicity;
  std::vector<Rational> base_costs;  // t, indexed by edge id
  Perturbation perturbation;         // t'_i (or the report t~_i)
  Solution x;
  Solution x_prime;
  std::optional<MonotonicityTerms> monotonicity;
  std::optional<UtilityTerms> utility;
};

MonotonicityTerms monotonicity_terms(const Instance& inst, const Perturbation& pert, const Solution& x,
                                     const Solution& x_prime);

/// Re-evaluates the stored cost terms against the instance structure (edge
/// owners) and the stored costs, and checks the inequality fails strictly.
/// Payments of a truthfulness witness are taken as recorded.
bool verify_witness(const Instance& structure, const ViolationWitness& witness);

/// nullopt means the probe passed. Throws FeasibilityError when the algorithm
/// returns an infeasible solution.
std::optional<ViolationWitness> check_weak_monotonicity(const AllocationAlgorithm& alg, const Instance& inst,
                                                        const Perturbation& pert);

/// `inst` carries the true type of `report.agent` (and the others' reports);
/// `report` is the misreport t~_i.
std::optional<ViolationWitness> check_truthfulness(const Mechanism& mech, const Instance& inst,
                                                   const Perturbation& report);

struct Lemma1Perturbation {
  Perturbation perturbation;
  /// False when some selected edge already costs 0 and cannot decrease.
  bool strict = true;
};

/// Selected edges of `agent` scaled by `shrink` in (0,1), unselected edges
/// raised by `bump` > 0.
Lemma1Perturbation lemma1_perturbation(const Instance& inst, const Solution& alloc, AgentId agent,
                                       const Rational& shrink, const Rational& bump);

/// Passes iff A_i(t) = A_i(t'_i, t_{-i}) as edge sets. On failure the witness
/// carries the (strictly violated) monotonicity terms. Throws
/// NonStrictPerturbation unless every selected edge strictly decreases and
/// every unselected edge strictly increases.
std::optional<ViolationWitness> check_lemma1_stability(const AllocationAlgorithm& alg, const Instance& inst,
                                                       const Perturbation& pert);

/// Truthfulness probes in both directions of a profile pair plus the derived
/// monotonicity probe. If both truthfulness probes pass, so must monotonicity.
struct PairAudit {
  bool truthful_forward = false;
  bool truthful_backward = false;
  bool monotone = false;
};
PairAudit audit_profile_pair(const Mechanism& mech, const Instance& inst, const Perturbation& pert);

/// Random perturbation of `agent`: half the time stability-shaped around
/// `alloc`, otherwise a fresh resample of all of the agent's costs.
Perturbation sample_perturbation(Rng& rng, const Instance& inst, const Solution& alloc, AgentId agent,
                                 CostDistribution dist);

struct ProbeSummary {
  std::uint64_t seed = 0;
  int trials = 0;
  int passes = 0;
  std::vector<ViolationWitness> violations;
  std::vector<std::uint64_t> violating_trials;
};

/// Seeded random probes. Trial k draws everything from trial_rng(seed, k), so
/// the outcome does not depend on `jobs`.
ProbeSummary probe_monotonicity(const AllocationAlgorithm& alg, const SampleSpec& spec, std::uint64_t seed,
                                int trials, int jobs = 1);
ProbeSummary probe_lemma1(const AllocationAlgorithm& alg, const SampleSpec& spec, std::uint64_t seed, int trials,
                          int jobs = 1);
/// `spec.require_payable` should be set for mechanisms with Clarke payments.
ProbeSummary probe_truthfulness(const Mechanism& mech, const SampleSpec& spec, std::uint64_t seed, int trials,
                                int jobs = 1);

}  // namespace mmech
