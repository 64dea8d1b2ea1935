#include "mmech/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmech {

ChainInstance adversary_instance(const ChainSpec& spec, ChainMode mode) {
  spec.validate(mode);
  if (mode == ChainMode::Dmst) return gen_dmst_chain(spec);
  ChainSpec plain = spec;
  plain.helper_eps.reset();
  return expand_chain(gen_chain(plain).instance, spec.eps(mode));
}

namespace {

Solution run_checked(const AllocationAlgorithm& alg, const Instance& inst) {
  Solution sol = alg(inst);
  if (!validate_solution(inst, sol)) {
    std::string profile;
    for (const Edge& e : inst.edges()) profile += (profile.empty() ? "" : ",") + to_string(e.cost);
    throw FeasibilityError("algorithm '" + alg.name + "' returned an infeasible solution on profile [" + profile + "]");
  }
  return sol;
}

// Agent at 1-based position `pos` of FULLPATH(heavy, .): heavy, heavy+1, ... cyclically.
AgentId agent_at(AgentId heavy, int pos, int n) { return ((heavy - 1 + pos - 1) % n) + 1; }

std::vector<int> heavy_blocks(const BlockIndexing& idx, const Solution& initial, AgentId heavy) {
  std::vector<int> out;
  for (int k = 0; k < idx.block_count(); ++k)
    if (route_selected(idx, initial, k, heavy)) out.push_back(k);
  return out;
}

}  // namespace

UpperBound opt_upper_bound(ChainMode mode, const Instance& final_profile, const BlockIndexing& idx,
                           const Solution& initial, AgentId heavy, const Rational& eps) {
  const int n = idx.agents, l = idx.block_count();
  std::vector<AgentId> pick(static_cast<std::size_t>(l), 0);
  int round_robin = 0;
  for (int k = 0; k < l; ++k) {
    if (route_selected(idx, initial, k, heavy)) {
      pick[static_cast<std::size_t>(k)] = agent_at(heavy, 1 + round_robin++ % n, n);
      continue;
    }
    for (AgentId i = 1; i <= n && pick[static_cast<std::size_t>(k)] == 0; ++i)
      if (route_selected(idx, initial, k, i)) pick[static_cast<std::size_t>(k)] = i;
    if (pick[static_cast<std::size_t>(k)] == 0)
      throw std::logic_error("block " + std::to_string(k) + " has no selected route");
  }
  std::vector<EdgeId> ids;
  for (int k = 0; k < l; ++k) {
    for (AgentId i = 1; i <= n; ++i) {
      const BlockPath& route = idx.route(k, i);
      if (i == pick[static_cast<std::size_t>(k)])
        ids.insert(ids.end(), route.rightward.begin(), route.rightward.end());
      else
        ids.insert(ids.end(), route.leftward.begin(), route.leftward.end());
    }
  }
  UpperBound out;
  out.solution = Solution(std::move(ids));
  if (!validate_solution(final_profile, out.solution)) throw std::logic_error("redistribution solution is infeasible");
  out.cost = cost_summary(final_profile, out.solution).max_cost;
  const Rational heavy_count = static_cast<long>(heavy_blocks(idx, initial, heavy).size());
  const Rational slack = mode == ChainMode::Path ? Rational(2 * eps * l) : Rational(4 * eps * n * l);
  out.closed_form = Rational(ceil(Rational(heavy_count / n))) * (1 + eps) + slack;
  return out;
}

AdversaryReport run_adversary(const AllocationAlgorithm& alg, const ChainSpec& spec, ChainMode mode) {
  if (spec.base_cost != 1) throw std::invalid_argument("the adversary starts from the all-ones profile");
  const ChainInstance chain = adversary_instance(spec, mode);
  const BlockIndexing& idx = chain.indexing;
  const int n = spec.agents, l = spec.blocks;

  AdversaryReport report;
  report.algorithm = alg.name;
  report.mode = mode;
  report.spec = spec;
  report.eps = spec.eps(mode);

  Instance current = chain.instance;
  const Solution initial = run_checked(alg, current);
  report.trace.push_back({0, initial, true, true});

  report.selections.assign(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < l; ++k)
    for (AgentId i = 1; i <= n; ++i)
      if (route_selected(idx, initial, k, i)) ++report.selections[static_cast<std::size_t>(i - 1)];
  report.heavy = static_cast<AgentId>(
      std::max_element(report.selections.begin(), report.selections.end()) - report.selections.begin() + 1);
  const int heavy_count = report.selections[static_cast<std::size_t>(report.heavy - 1)];
  if (static_cast<long>(heavy_count) * n < l) throw std::logic_error("pigeonhole bound l* >= l/n failed");

  if (mode == ChainMode::Path) {
    for (AgentId i = 1; i <= n; ++i)
      if (i != report.heavy) report.order.push_back(i);
  } else {
    for (int pos = n; pos >= 2; --pos) report.order.push_back(agent_at(report.heavy, pos, n));
  }
  const std::vector<int> heavy_set = heavy_blocks(idx, initial, report.heavy);

  Solution x = initial;
  for (std::size_t step = 0; step < report.order.size(); ++step) {
    const AgentId a = report.order[step];
    Perturbation pert{a, {}};
    for (EdgeId id : current.edges_of(a)) {
      if (x.contains(id)) {
        if (sgn(current.cost(id)) <= 0) throw std::logic_error("selected edge already at zero cost");
        pert.new_costs.emplace_back(id, Rational(0));
      } else {
        pert.new_costs.emplace_back(id, current.cost(id) + report.eps);
      }
    }
    Instance next = apply_perturbation(current, pert);
    Solution xp = run_checked(alg, next);

    AdversaryStep rec{a, xp, agent_selection(current, x, a) == agent_selection(current, xp, a), true};
    if (mode == ChainMode::Path) {
      rec.structure_stable = xp == x;
    } else {
      const int keep = n - static_cast<int>(step) - 1;  // positions 1..n-k of FULLPATH(i*, j)
      for (int k : heavy_set)
        for (int pos = 1; pos <= keep; ++pos)
          if (!xp.contains(idx.route(k, report.heavy).rightward[static_cast<std::size_t>(pos - 1)]))
            rec.structure_stable = false;
    }
    report.trace.push_back(rec);

    if (!rec.lemma1_stable) {
      auto witness = check_lemma1_stability(alg, current, pert);
      if (!witness) throw std::logic_error("stability failure did not reproduce");
      report.violation = std::move(*witness);
      return report;
    }
    if (!rec.structure_stable) throw std::logic_error("structure changed although the transformed agent was stable");
    current = std::move(next);
    x = std::move(xp);
  }

  RatioWitness ratio;
  ratio.final_costs = current.costs();
  ratio.final_allocation = x;
  ratio.algorithm_cost = cost_summary(current, x).max_cost;
  if (ratio.algorithm_cost < heavy_count) throw std::logic_error("final cost below l*");
  UpperBound ub = opt_upper_bound(mode, current, idx, initial, report.heavy, report.eps);
  ratio.upper_bound_solution = std::move(ub.solution);
  ratio.opt_upper_bound = ub.cost;
  ratio.closed_form = ub.closed_form;
  ratio.certified_ratio = ratio.algorithm_cost / ratio.opt_upper_bound;
  if (spec.uses_default_eps(mode)) ratio.theory_bound = n - make_rational(4L * n * n * n, l);
  report.ratio = std::move(ratio);
  return report;
}

bool verify_adversary_report(const AdversaryReport& report) {
  if (report.ratio.has_value() == report.violation.has_value()) return false;
  std::optional<ChainInstance> built;
  try {
    built.emplace(adversary_instance(report.spec, report.mode));
  } catch (const std::exception&) {
    return false;
  }
  const ChainInstance& chain = *built;
  if (report.violation) return verify_witness(chain.instance, *report.violation);

  const RatioWitness& r = *report.ratio;
  if (report.trace.empty() || report.selections.size() != static_cast<std::size_t>(report.spec.agents)) return false;
  try {
    const Instance final_profile = chain.instance.with_costs(r.final_costs);
    if (!validate_solution(final_profile, r.final_allocation)) return false;
    if (cost_summary(final_profile, r.final_allocation).max_cost != r.algorithm_cost) return false;
    if (r.algorithm_cost < report.selections[static_cast<std::size_t>(report.heavy - 1)]) return false;
    if (!validate_solution(final_profile, r.upper_bound_solution)) return false;
    if (cost_summary(final_profile, r.upper_bound_solution).max_cost != r.opt_upper_bound) return false;
    if (sgn(r.opt_upper_bound) <= 0 || r.certified_ratio != r.algorithm_cost / r.opt_upper_bound) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace mmech
