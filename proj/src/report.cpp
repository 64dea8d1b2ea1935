#include "mmech/report.hpp"

#include <sstream>

namespace mmech {

namespace {

const json& member(const json& doc, const char* key, const std::string& path) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(path + key, "missing field");
  return doc.at(key);
}

template <class T>
T get_as(const json& doc, const char* key, const std::string& path) {
  try {
    return member(doc, key, path).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(path + key, "wrong type");
  }
}

json terms_to_json(const MonotonicityTerms& m) {
  return {{"t_x", rational_string(m.t_x)},
          {"tp_xp", rational_string(m.tp_xp)},
          {"t_xp", rational_string(m.t_xp)},
          {"tp_x", rational_string(m.tp_x)},
          {"holds", m.holds()}};
}

json utility_to_json(const UtilityTerms& u) {
  return {{"payment_truth", rational_string(u.payment_truth)},
          {"cost_truth", rational_string(u.cost_truth)},
          {"payment_report", rational_string(u.payment_report)},
          {"cost_report", rational_string(u.cost_report)},
          {"holds", u.holds()}};
}

std::vector<Rational> rationals_from_json(const json& value, const std::string& field) {
  if (!value.is_array()) throw ParseError(field, "expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < value.size(); ++k)
    out.push_back(rational_from_string(value[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json rationals_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const Rational& v : values) out.push_back(rational_string(v));
  return out;
}

}  // namespace

json rational_string(const Rational& value) { return to_string(value); }

Rational rational_from_string(const json& value, const std::string& field) { return rational_from_json(value, field); }

json solution_to_json(const Solution& sol) { return sol.edge_ids(); }

Solution solution_from_json(const json& value, const std::string& field) {
  if (!value.is_array()) throw ParseError(field, "expected an array of edge ids");
  std::vector<EdgeId> ids;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_number_integer()) throw ParseError(field + "[" + std::to_string(k) + "]", "expected an integer");
    ids.push_back(value[k].get<EdgeId>());
  }
  return Solution(std::move(ids));
}

json optimum_to_json(const OptimumReport& report) {
  return {{"objective", to_string(report.objective)},
          {"value", rational_string(report.value)},
          {"witness", solution_to_json(report.witness)}};
}

json outcome_to_json(const Instance& inst, const MechanismOutcome& outcome) {
  const CostSummary summary = cost_summary(inst, outcome.allocation);
  json agents = json::array();
  for (AgentId i = 1; i <= inst.agent_count(); ++i) {
    agents.push_back({{"agent", i},
                      {"selected_edge_ids", agent_selection(inst, outcome.allocation, i)},
                      {"cost", rational_string(summary.per_agent[static_cast<std::size_t>(i - 1)])},
                      {"payment", rational_string(outcome.payments[static_cast<std::size_t>(i - 1)])},
                      {"utility", rational_string(utility(inst, outcome, i))}});
  }
  return {{"allocation", solution_to_json(outcome.allocation)},
          {"social_cost", rational_string(summary.sum_cost)},
          {"max_cost", rational_string(summary.max_cost)},
          {"agents", agents}};
}

json witness_to_json(const ViolationWitness& w) {
  json changes = json::array();
  for (const auto& [id, cost] : w.perturbation.new_costs) changes.push_back({{"edge", id}, {"cost", rational_string(cost)}});
  json out = {{"kind", to_string(w.kind)},
              {"agent", w.perturbation.agent},
              {"base_costs", rationals_to_json(w.base_costs)},
              {"perturbation", changes},
              {"x", solution_to_json(w.x)},
              {"x_prime", solution_to_json(w.x_prime)}};
  if (w.monotonicity) out["monotonicity"] = terms_to_json(*w.monotonicity);
  if (w.utility) out["utility"] = utility_to_json(*w.utility);
  return out;
}

ViolationWitness witness_from_json(const json& doc) {
  ViolationWitness w;
  const std::string kind = get_as<std::string>(doc, "kind", "");
  if (kind == to_string(ViolationKind::WeakMonotonicity)) w.kind = ViolationKind::WeakMonotonicity;
  else if (kind == to_string(ViolationKind::Truthfulness)) w.kind = ViolationKind::Truthfulness;
  else if (kind == to_string(ViolationKind::Lemma1Stability)) w.kind = ViolationKind::Lemma1Stability;
  else throw ParseError("kind", "unknown violation kind '" + kind + "'");
  w.perturbation.agent = get_as<AgentId>(doc, "agent", "");
  w.base_costs = rationals_from_json(member(doc, "base_costs", ""), "base_costs");
  const json& changes = member(doc, "perturbation", "");
  if (!changes.is_array()) throw ParseError("perturbation", "expected an array");
  for (std::size_t k = 0; k < changes.size(); ++k) {
    const std::string path = "perturbation[" + std::to_string(k) + "].";
    w.perturbation.new_costs.emplace_back(get_as<EdgeId>(changes[k], "edge", path),
                                          rational_from_string(member(changes[k], "cost", path), path + "cost"));
  }
  w.x = solution_from_json(member(doc, "x", ""), "x");
  w.x_prime = solution_from_json(member(doc, "x_prime", ""), "x_prime");
  if (doc.contains("monotonicity")) {
    const json& m = doc.at("monotonicity");
    w.monotonicity = MonotonicityTerms{rational_from_string(member(m, "t_x", "monotonicity."), "monotonicity.t_x"),
                                       rational_from_string(member(m, "tp_xp", "monotonicity."), "monotonicity.tp_xp"),
                                       rational_from_string(member(m, "t_xp", "monotonicity."), "monotonicity.t_xp"),
                                       rational_from_string(member(m, "tp_x", "monotonicity."), "monotonicity.tp_x")};
  }
  if (doc.contains("utility")) {
    const json& u = doc.at("utility");
    w.utility = UtilityTerms{
        rational_from_string(member(u, "payment_truth", "utility."), "utility.payment_truth"),
        rational_from_string(member(u, "cost_truth", "utility."), "utility.cost_truth"),
        rational_from_string(member(u, "payment_report", "utility."), "utility.payment_report"),
        rational_from_string(member(u, "cost_report", "utility."), "utility.cost_report")};
  }
  return w;
}

json probe_to_json(const ProbeSummary& summary) {
  json witnesses = json::array();
  for (std::size_t k = 0; k < summary.violations.size(); ++k) {
    json w = witness_to_json(summary.violations[k]);
    w["trial"] = summary.violating_trials[k];
    witnesses.push_back(std::move(w));
  }
  return {{"seed", summary.seed},
          {"trials", summary.trials},
          {"passes", summary.passes},
          {"violations", summary.violations.size()},
          {"witnesses", witnesses}};
}

json ptas_to_json(const PtasResult& result) {
  return {{"value", rational_string(result.report.value)},
          {"witness", solution_to_json(result.report.witness)},
          {"epsilon", rational_string(result.config.epsilon)},
          {"delta", rational_string(result.config.delta)},
          {"ratio_bound", rational_string(result.config.ratio_bound)},
          {"shortest_path", rational_string(result.config.shortest_path)},
          {"short_circuit", result.config.short_circuit},
          {"label_table_size", result.label_table_size},
          {"candidates", result.candidates}};
}

json chain_spec_to_json(const ChainSpec& spec) {
  json out = {{"agents", spec.agents}, {"blocks", spec.blocks}, {"base_cost", rational_string(spec.base_cost)}};
  out["eps"] = spec.helper_eps ? json(rational_string(*spec.helper_eps)) : json(nullptr);
  return out;
}

ChainSpec chain_spec_from_json(const json& doc) {
  ChainSpec spec;
  spec.agents = get_as<int>(doc, "agents", "spec.");
  spec.blocks = get_as<int>(doc, "blocks", "spec.");
  spec.base_cost = rational_from_string(member(doc, "base_cost", "spec."), "spec.base_cost");
  const json& eps = member(doc, "eps", "spec.");
  if (!eps.is_null()) spec.helper_eps = rational_from_string(eps, "spec.eps");
  return spec;
}

json adversary_to_json(const AdversaryReport& report) {
  json trace = json::array();
  for (const AdversaryStep& step : report.trace) {
    trace.push_back({{"agent", step.transformed},
                     {"allocation", solution_to_json(step.allocation)},
                     {"stable", step.lemma1_stable},
                     {"structure_stable", step.structure_stable}});
  }
  json out = {{"algorithm", report.algorithm},
              {"mode", to_string(report.mode)},
              {"spec", chain_spec_to_json(report.spec)},
              {"eps", rational_string(report.eps)},
              {"tie_break", "colex"},
              {"selections", report.selections},
              {"heavy_agent", report.heavy},
              {"order", report.order},
              {"trace", trace}};
  if (report.ratio) {
    const RatioWitness& r = *report.ratio;
    json ratio = {{"final_costs", rationals_to_json(r.final_costs)},
                  {"final_allocation", solution_to_json(r.final_allocation)},
                  {"algorithm_cost", rational_string(r.algorithm_cost)},
                  {"upper_bound_solution", solution_to_json(r.upper_bound_solution)},
                  {"opt_upper_bound", rational_string(r.opt_upper_bound)},
                  {"certified_ratio", rational_string(r.certified_ratio)},
                  {"closed_form", rational_string(r.closed_form)}};
    ratio["theory_bound"] = r.theory_bound ? json(rational_string(*r.theory_bound)) : json(nullptr);
    out["verdict"] = "ratio";
    out["ratio"] = std::move(ratio);
  } else if (report.violation) {
    out["verdict"] = "monotonicity_violation";
    out["violation"] = witness_to_json(*report.violation);
  }
  return out;
}

AdversaryReport adversary_from_json(const json& doc) {
  AdversaryReport r;
  r.algorithm = get_as<std::string>(doc, "algorithm", "");
  const std::string mode = get_as<std::string>(doc, "mode", "");
  if (mode == "path") r.mode = ChainMode::Path;
  else if (mode == "dmst") r.mode = ChainMode::Dmst;
  else throw ParseError("mode", "expected \"path\" or \"dmst\"");
  r.spec = chain_spec_from_json(member(doc, "spec", ""));
  r.eps = rational_from_string(member(doc, "eps", ""), "eps");
  r.selections = get_as<std::vector<int>>(doc, "selections", "");
  r.heavy = get_as<AgentId>(doc, "heavy_agent", "");
  r.order = get_as<std::vector<AgentId>>(doc, "order", "");
  const json& trace = member(doc, "trace", "");
  if (!trace.is_array()) throw ParseError("trace", "expected an array");
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const std::string path = "trace[" + std::to_string(k) + "].";
    r.trace.push_back({get_as<AgentId>(trace[k], "agent", path),
                       solution_from_json(member(trace[k], "allocation", path), path + "allocation"),
                       get_as<bool>(trace[k], "stable", path), get_as<bool>(trace[k], "structure_stable", path)});
  }
  if (doc.contains("ratio")) {
    const json& j = doc.at("ratio");
    RatioWitness w;
    w.final_costs = rationals_from_json(member(j, "final_costs", "ratio."), "ratio.final_costs");
    w.final_allocation = solution_from_json(member(j, "final_allocation", "ratio."), "ratio.final_allocation");
    w.algorithm_cost = rational_from_string(member(j, "algorithm_cost", "ratio."), "ratio.algorithm_cost");
    w.upper_bound_solution =
        solution_from_json(member(j, "upper_bound_solution", "ratio."), "ratio.upper_bound_solution");
    w.opt_upper_bound = rational_from_string(member(j, "opt_upper_bound", "ratio."), "ratio.opt_upper_bound");
    w.certified_ratio = rational_from_string(member(j, "certified_ratio", "ratio."), "ratio.certified_ratio");
    w.closed_form = rational_from_string(member(j, "closed_form", "ratio."), "ratio.closed_form");
    const json& pb = member(j, "theory_bound", "ratio.");
    if (!pb.is_null()) w.theory_bound = rational_from_string(pb, "ratio.theory_bound");
    r.ratio = std::move(w);
  }
  if (doc.contains("violation")) r.violation = witness_from_json(doc.at("violation"));
  return r;
}

std::string adversary_csv_header() {
  return "algorithm,mode,agents,blocks,eps,heavy_agent,heavy_blocks,verdict,algorithm_cost,opt_upper_bound,"
         "certified_ratio,certified_ratio_approx,theory_bound";
}

std::string adversary_csv_row(const AdversaryReport& r) {
  std::ostringstream out;
  out << r.algorithm << ',' << to_string(r.mode) << ',' << r.spec.agents << ',' << r.spec.blocks << ','
      << to_string(r.eps) << ',' << r.heavy << ',' << r.selections.at(static_cast<std::size_t>(r.heavy - 1)) << ',';
  if (r.ratio) {
    out << "ratio," << to_string(r.ratio->algorithm_cost) << ',' << to_string(r.ratio->opt_upper_bound) << ','
        << to_string(r.ratio->certified_ratio) << ',' << to_double(r.ratio->certified_ratio) << ','
        << (r.ratio->theory_bound ? to_string(*r.ratio->theory_bound) : "");
  } else {
    out << "monotonicity_violation,,,,,";
  }
  return out.str();
}

}  // namespace mmech
