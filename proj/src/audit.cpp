#include "mmech/audit.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>
#include <string>

namespace mmech {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::WeakMonotonicity: return "weak-monotonicity";
    case ViolationKind::Truthfulness: return "truthfulness";
    case ViolationKind::Lemma1Stability: return "lemma1-stability";
  }
  return "?";
}

void check_perturbation(const Instance& inst, const Perturbation& pert) {
  if (pert.agent < 1 || pert.agent > inst.agent_count()) throw std::invalid_argument("perturbation agent out of range");
  for (const auto& [id, cost] : pert.new_costs) {
    if (id < 0 || id >= inst.edge_count()) throw std::invalid_argument("perturbation names unknown edge");
    if (inst.edge(id).owner != pert.agent)
      throw std::invalid_argument("perturbation touches edge " + std::to_string(id) + " of another agent");
    if (sgn(cost) < 0) throw std::invalid_argument("perturbation sets a negative cost");
  }
}

Instance apply_perturbation(const Instance& inst, const Perturbation& pert) {
  check_perturbation(inst, pert);
  return inst.with_edge_costs(pert.new_costs);
}

namespace {

std::vector<Rational> perturbed_costs(std::span<const Rational> base, const Perturbation& pert) {
  std::vector<Rational> out(base.begin(), base.end());
  for (const auto& [id, cost] : pert.new_costs) out[static_cast<std::size_t>(id)] = cost;
  return out;
}

MonotonicityTerms terms_from(const Instance& structure, std::span<const Rational> t, std::span<const Rational> tp,
                             AgentId i, const Solution& x, const Solution& xp) {
  return {agent_cost_under(structure, t, x, i), agent_cost_under(structure, tp, xp, i),
          agent_cost_under(structure, t, xp, i), agent_cost_under(structure, tp, x, i)};
}

Solution run_checked(const AllocationAlgorithm& alg, const Instance& inst) {
  Solution sol = alg(inst);
  if (!validate_solution(inst, sol))
    throw FeasibilityError("algorithm '" + alg.name + "' returned an infeasible solution");
  return sol;
}

MechanismOutcome run_checked(const Mechanism& mech, const Instance& inst) {
  MechanismOutcome out = mech(inst);
  if (!validate_solution(inst, out.allocation))
    throw FeasibilityError("mechanism '" + mech.name + "' returned an infeasible allocation");
  if (out.payments.size() != static_cast<std::size_t>(inst.agent_count()))
    throw FeasibilityError("mechanism '" + mech.name + "' returned a wrong-length payment vector");
  return out;
}

}  // namespace

MonotonicityTerms monotonicity_terms(const Instance& inst, const Perturbation& pert, const Solution& x,
                                     const Solution& x_prime) {
  const auto t = inst.costs();
  const auto tp = perturbed_costs(t, pert);
  return terms_from(inst, t, tp, pert.agent, x, x_prime);
}

bool verify_witness(const Instance& structure, const ViolationWitness& w) {
  if (w.base_costs.size() != static_cast<std::size_t>(structure.edge_count())) return false;
  try {
    check_perturbation(structure, w.perturbation);
    check_edge_ids(structure, w.x);
    check_edge_ids(structure, w.x_prime);
  } catch (const std::exception&) {
    return false;
  }
  const auto tp = perturbed_costs(w.base_costs, w.perturbation);
  const AgentId i = w.perturbation.agent;
  if (w.kind == ViolationKind::Truthfulness) {
    if (!w.utility) return false;
    const auto& u = *w.utility;
    // Utilities are measured with the true type (base costs) in both outcomes.
    if (u.cost_truth != agent_cost_under(structure, w.base_costs, w.x, i)) return false;
    if (u.cost_report != agent_cost_under(structure, w.base_costs, w.x_prime, i)) return false;
    return !u.holds();
  }
  if (!w.monotonicity) return false;
  const auto fresh = terms_from(structure, w.base_costs, tp, i, w.x, w.x_prime);
  const auto& m = *w.monotonicity;
  if (fresh.t_x != m.t_x || fresh.tp_xp != m.tp_xp || fresh.t_xp != m.t_xp || fresh.tp_x != m.tp_x) return false;
  return !m.holds();
}

std::optional<ViolationWitness> check_weak_monotonicity(const AllocationAlgorithm& alg, const Instance& inst,
                                                        const Perturbation& pert) {
  const Instance perturbed = apply_perturbation(inst, pert);
  Solution x = run_checked(alg, inst);
  Solution xp = run_checked(alg, perturbed);
  auto terms = monotonicity_terms(inst, pert, x, xp);
  if (terms.holds()) return std::nullopt;
  return ViolationWitness{ViolationKind::WeakMonotonicity, inst.costs(), pert, std::move(x), std::move(xp),
                          std::move(terms), std::nullopt};
}

std::optional<ViolationWitness> check_truthfulness(const Mechanism& mech, const Instance& inst,
                                                   const Perturbation& report) {
  const Instance reported = apply_perturbation(inst, report);
  MechanismOutcome truth = run_checked(mech, inst);
  MechanismOutcome lie = run_checked(mech, reported);
  const AgentId i = report.agent;
  UtilityTerms terms{truth.payments[static_cast<std::size_t>(i - 1)], agent_cost(inst, truth.allocation, i),
                     lie.payments[static_cast<std::size_t>(i - 1)], agent_cost(inst, lie.allocation, i)};
  if (terms.holds()) return std::nullopt;
  return ViolationWitness{ViolationKind::Truthfulness, inst.costs(), report, std::move(truth.allocation),
                          std::move(lie.allocation), std::nullopt, std::move(terms)};
}

Lemma1Perturbation lemma1_perturbation(const Instance& inst, const Solution& alloc, AgentId agent,
                                       const Rational& shrink, const Rational& bump) {
  if (sgn(shrink) <= 0 || shrink >= 1) throw std::invalid_argument("shrink must lie in (0,1)");
  if (sgn(bump) <= 0) throw std::invalid_argument("bump must be positive");
  Lemma1Perturbation out{{agent, {}}, true};
  for (EdgeId id : inst.edges_of(agent)) {
    const Rational& c = inst.cost(id);
    if (alloc.contains(id)) {
      if (sgn(c) == 0) out.strict = false;
      out.perturbation.new_costs.emplace_back(id, c * shrink);
    } else {
      out.perturbation.new_costs.emplace_back(id, c + bump);
    }
  }
  return out;
}

std::optional<ViolationWitness> check_lemma1_stability(const AllocationAlgorithm& alg, const Instance& inst,
                                                       const Perturbation& pert) {
  check_perturbation(inst, pert);
  Solution x = run_checked(alg, inst);
  std::map<EdgeId, Rational> changed(pert.new_costs.begin(), pert.new_costs.end());
  for (EdgeId id : inst.edges_of(pert.agent)) {
    auto it = changed.find(id);
    if (it == changed.end())
      throw NonStrictPerturbation("edge " + std::to_string(id) + " of the agent is left unchanged");
    const bool ok = x.contains(id) ? it->second < inst.cost(id) : it->second > inst.cost(id);
    if (!ok) throw NonStrictPerturbation("edge " + std::to_string(id) + " does not move strictly");
  }
  Solution xp = run_checked(alg, apply_perturbation(inst, pert));
  if (agent_selection(inst, x, pert.agent) == agent_selection(inst, xp, pert.agent)) return std::nullopt;
  auto terms = monotonicity_terms(inst, pert, x, xp);
  if (terms.holds()) throw std::logic_error("selection changed under a strict perturbation without violating monotonicity");
  return ViolationWitness{ViolationKind::Lemma1Stability, inst.costs(), pert, std::move(x), std::move(xp),
                          std::move(terms), std::nullopt};
}

PairAudit audit_profile_pair(const Mechanism& mech, const Instance& inst, const Perturbation& pert) {
  const Instance other = apply_perturbation(inst, pert);
  Perturbation back{pert.agent, {}};
  for (const auto& [id, cost] : pert.new_costs) back.new_costs.emplace_back(id, inst.cost(id));
  PairAudit out;
  out.truthful_forward = !check_truthfulness(mech, inst, pert).has_value();
  out.truthful_backward = !check_truthfulness(mech, other, back).has_value();
  const AllocationAlgorithm alloc{mech.name, [&mech](const Instance& i) { return mech(i).allocation; }};
  out.monotone = !check_weak_monotonicity(alloc, inst, pert).has_value();
  return out;
}

Perturbation sample_perturbation(Rng& rng, const Instance& inst, const Solution& alloc, AgentId agent,
                                 CostDistribution dist) {
  if (uniform_int(rng, 0, 1) == 0) {
    const Rational shrink = make_rational(static_cast<long>(uniform_int(rng, 1, 3)), 4);
    const Rational bump = make_rational(static_cast<long>(uniform_int(rng, 1, 4)), static_cast<long>(uniform_int(rng, 1, 4)));
    return lemma1_perturbation(inst, alloc, agent, shrink, bump).perturbation;
  }
  Perturbation out{agent, {}};
  for (EdgeId id : inst.edges_of(agent)) out.new_costs.emplace_back(id, sample_cost(rng, dist));
  return out;
}

namespace {

template <class Probe>
ProbeSummary run_trials(std::uint64_t seed, int trials, int jobs, Probe probe) {
  std::vector<std::optional<ViolationWitness>> results(static_cast<std::size_t>(std::max(trials, 0)));
  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      Rng rng = trial_rng(seed, static_cast<std::uint64_t>(k));
      results[static_cast<std::size_t>(k)] = probe(rng);
    }
  };
  jobs = std::clamp(jobs, 1, std::max(trials, 1));
  std::vector<std::future<void>> pending;
  const int chunk = (trials + jobs - 1) / jobs;
  for (int begin = 0; begin < trials; begin += chunk)
    pending.push_back(std::async(std::launch::async, work, begin, std::min(trials, begin + chunk)));
  for (auto& f : pending) f.get();

  ProbeSummary out{seed, trials, 0, {}, {}};
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (!results[k]) {
      ++out.passes;
      continue;
    }
    out.violations.push_back(std::move(*results[k]));
    out.violating_trials.push_back(k);
  }
  return out;
}

AgentId random_agent(Rng& rng, const Instance& inst) {
  return static_cast<AgentId>(uniform_int(rng, 1, inst.agent_count()));
}

}  // namespace

ProbeSummary probe_monotonicity(const AllocationAlgorithm& alg, const SampleSpec& spec, std::uint64_t seed,
                                int trials, int jobs) {
  return run_trials(seed, trials, jobs, [&](Rng& rng) {
    const Instance inst = sample_instance(rng, spec);
    const AgentId i = random_agent(rng, inst);
    const Perturbation pert = sample_perturbation(rng, inst, alg(inst), i, spec.costs);
    return check_weak_monotonicity(alg, inst, pert);
  });
}

ProbeSummary probe_lemma1(const AllocationAlgorithm& alg, const SampleSpec& spec, std::uint64_t seed, int trials,
                          int jobs) {
  return run_trials(seed, trials, jobs, [&](Rng& rng) -> std::optional<ViolationWitness> {
    while (true) {
      const Instance inst = sample_instance(rng, spec);
      const Solution x = alg(inst);
      const AgentId i = random_agent(rng, inst);
      const Rational shrink = make_rational(static_cast<long>(uniform_int(rng, 1, 3)), 4);
      const Rational bump = make_rational(static_cast<long>(uniform_int(rng, 1, 4)), 4);
      auto l1 = lemma1_perturbation(inst, x, i, shrink, bump);
      if (!l1.strict) continue;  // draw again; zero-cost selected edges cannot decrease
      return check_lemma1_stability(alg, inst, l1.perturbation);
    }
  });
}

ProbeSummary probe_truthfulness(const Mechanism& mech, const SampleSpec& spec, std::uint64_t seed, int trials,
                                int jobs) {
  return run_trials(seed, trials, jobs, [&](Rng& rng) {
    const Instance inst = sample_instance(rng, spec);
    const AgentId i = random_agent(rng, inst);
    const Perturbation report = sample_perturbation(rng, inst, mech(inst).allocation, i, spec.costs);
    return check_truthfulness(mech, inst, report);
  });
}

}  // namespace mmech
