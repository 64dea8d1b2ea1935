#pragma once

#include "mmech/adversary.hpp"
#include "mmech/audit.hpp"
#include "mmech/instance_io.hpp"
#include "mmech/pareto.hpp"
#include "mmech/solvers.hpp"
#include "mmech/vcg.hpp"

#include <string>

namespace mmech {

/// Every rational in a report is a "p/q" string (integers as "p").
json rational_string(const Rational& value);
Rational rational_from_string(const json& value, const std::string& field);

json solution_to_json(const Solution& sol);
Solution solution_from_json(const json& value, const std::string& field);

json optimum_to_json(const OptimumReport& report);

/// Per-agent table {agent, selected_edge_ids, cost, payment, utility}.
json outcome_to_json(const Instance& inst, const MechanismOutcome& outcome);

json witness_to_json(const ViolationWitness& witness);
ViolationWitness witness_from_json(const json& doc);

json probe_to_json(const ProbeSummary& summary);

json ptas_to_json(const PtasResult& result);

json chain_spec_to_json(const ChainSpec& spec);
ChainSpec chain_spec_from_json(const json& doc);

json adversary_to_json(const AdversaryReport& report);
/// Throws ParseError naming the offending field.
AdversaryReport adversary_from_json(const json& doc);

/// One CSV row per adversary run, for ratio sweeps.
std::string adversary_csv_header();
std::string adversary_csv_row(const AdversaryReport& report);

}  // namespace mmech
