// Command-line front end: instance generation, solvers, VCG, PTAS, audits and adversary runs.
#include "mmech/adversary.hpp"
#include "mmech/algorithms.hpp"
#include "mmech/audit.hpp"
#include "mmech/chains.hpp"
#include "mmech/instance_io.hpp"
#include "mmech/pareto.hpp"
#include "mmech/report.hpp"
#include "mmech/solvers.hpp"
#include "mmech/vcg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mmech;

namespace {

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  int jobs = 1;

  std::string family = "chain";
  int agents = 2;
  int blocks = 1;
  std::vector<int> sweep_blocks;
  std::string eps;
  std::string epsilon = "1/4";
  std::string base_cost = "1";
  std::string instance;
  std::string objective = "min-max";
  std::string alg = "vcg";
  std::string mode = "path";
  std::string report;
  int trials = 100;
  int max_nodes = 8;
  int max_agents = 3;
  bool check_bruteforce = false;
};

Rational parse_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected an integer or p/q, got '" + text + "'");
  }
}

ChainMode chain_mode(const std::string& mode) { return mode == "dmst" ? ChainMode::Dmst : ChainMode::Path; }

ChainSpec chain_spec(const Options& o, int blocks) {
  ChainSpec spec{o.agents, blocks, parse_flag(o.base_cost, "--base-cost"), std::nullopt};
  if (!o.eps.empty()) spec.helper_eps = parse_flag(o.eps, "--eps");
  return spec;
}

Instance load(const Options& o) {
  if (o.instance.empty()) throw UsageError("--instance is required");
  return load_instance(o.instance);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + o.out);
}

void emit_report(const Options& o, const std::string& command, json config, json result) {
  config["seed"] = o.seed;
  json doc = {{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
  emit(o, doc.dump(2) + "\n");
}

int cmd_gen(const Options& o) {
  const ChainSpec spec = chain_spec(o, o.blocks);
  std::optional<Instance> inst;
  try {
    if (o.family == "chain") inst.emplace(gen_chain(spec).instance);
    else if (o.family == "expandedchain") {
      ChainSpec base = spec;
      base.helper_eps.reset();
      inst.emplace(expand_chain(gen_chain(base).instance, spec.eps(ChainMode::Path)).instance);
    } else inst.emplace(gen_dmst_chain(spec).instance);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(o, write_instance(*inst));
  std::cerr << o.family << ": " << inst->node_count() << " nodes, " << inst->edge_count() << " edges\n";
  return kPass;
}

int cmd_solve(const Options& o) {
  const Instance inst = load(o);
  OptimumReport rep;
  if (o.objective == "min-sum") rep = min_sum(inst);
  else if (o.objective == "chain-dp") rep = chain_minmax_exact(inst, detect_block_indexing(inst));
  else rep = brute_minmax(inst);
  emit_report(o, "solve", {{"objective", o.objective}, {"instance", instance_to_json(inst)}}, optimum_to_json(rep));
  std::cerr << o.objective << " value " << to_string(rep.value) << "\n";
  return kPass;
}

int cmd_vcg(const Options& o) {
  const Instance inst = load(o);
  const MechanismOutcome out = run_vcg(inst);
  emit_report(o, "vcg", {{"instance", instance_to_json(inst)}, {"tie_break", "colex"}}, outcome_to_json(inst, out));
  std::cerr << "agent  cost  payment  utility\n";
  for (AgentId i = 1; i <= inst.agent_count(); ++i) {
    std::cerr << i << "  " << to_string(agent_cost(inst, out.allocation, i)) << "  "
              << to_string(out.payments[static_cast<std::size_t>(i - 1)]) << "  " << to_string(utility(inst, out, i))
              << "\n";
  }
  return kPass;
}

int cmd_ptas(const Options& o) {
  const Instance inst = load(o);
  const Rational eps = parse_flag(o.epsilon, "--epsilon");
  if (sgn(eps) <= 0) throw UsageError("--epsilon must be positive");
  const PtasResult res = minmax_ptas(inst, eps);
  json result = ptas_to_json(res);
  bool ok = true;
  if (o.check_bruteforce) {
    const OptimumReport opt = brute_minmax(inst);
    const Rational bound = (1 + eps) * (1 + eps) * opt.value;
    ok = res.report.value <= bound;
    result["bruteforce"] = {{"value", rational_string(opt.value)},
                            {"bound", rational_string(bound)},
                            {"within_bound", ok}};
  }
  emit_report(o, "ptas", {{"epsilon", rational_string(eps)},
                          {"check_against_bruteforce", o.check_bruteforce},
                          {"instance", instance_to_json(inst)}},
              result);
  std::cerr << "ptas value " << to_string(res.report.value) << (ok ? "" : " exceeds (1+eps)^2 OPT") << "\n";
  return ok ? kPass : kPropertyFailure;
}

bool expected_monotone(const std::string& alg) { return alg == "vcg" || alg == "fixed"; }

int cmd_audit(const Options& o, const std::string& which) {
  if (o.trials < 1) throw UsageError("--trials must be positive");
  if (o.jobs < 1) throw UsageError("--jobs must be positive");
  SampleSpec spec;
  spec.mode = o.mode == "dmst" ? Mode::Arborescence : Mode::Path;
  spec.max_nodes = o.max_nodes;
  spec.max_agents = o.max_agents;
  if (spec.max_nodes < spec.min_nodes || spec.max_agents < 1) throw UsageError("invalid sampling bounds");
  ProbeSummary summary;
  if (which == "truthfulness") {
    if (o.alg != "vcg") throw UsageError("truthfulness audits need a mechanism with payments; only 'vcg' has them");
    if (spec.max_agents < 2) throw UsageError("truthfulness audits need --max-agents >= 2");
    spec.min_agents = 2;
    spec.require_payable = true;
    summary = probe_truthfulness(vcg_mechanism(), spec, o.seed, o.trials, o.jobs);
  } else {
    const AllocationAlgorithm alg = make_algorithm(o.alg, parse_flag(o.epsilon, "--epsilon"));
    summary = which == "lemma1" ? probe_lemma1(alg, spec, o.seed, o.trials, o.jobs)
                                : probe_monotonicity(alg, spec, o.seed, o.trials, o.jobs);
  }
  emit_report(o, "audit " + which,
              {{"alg", o.alg}, {"mode", o.mode}, {"trials", o.trials}, {"max_nodes", o.max_nodes},
               {"max_agents", o.max_agents}},
              probe_to_json(summary));
  std::cerr << which << ": " << summary.passes << "/" << summary.trials << " passed\n";
  if (!summary.violations.empty() && expected_monotone(o.alg)) return kPropertyFailure;
  return kPass;
}

AdversaryReport adversary_once(const Options& o, int blocks) {
  const AllocationAlgorithm alg = make_algorithm(o.alg, parse_flag(o.epsilon, "--epsilon"));
  ChainSpec spec = chain_spec(o, blocks);
  try {
    spec.validate(chain_mode(o.mode));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return run_adversary(alg, spec, chain_mode(o.mode));
}

int cmd_adversary_run(const Options& o) {
  const AdversaryReport rep = adversary_once(o, o.blocks);
  emit_report(o, "adversary run", {{"alg", o.alg}, {"epsilon", o.epsilon}}, adversary_to_json(rep));
  if (rep.ratio) std::cerr << "ratio witness: certified ratio " << to_string(rep.ratio->certified_ratio) << "\n";
  else std::cerr << "monotonicity witness for agent " << rep.violation->perturbation.agent << "\n";
  return kPass;
}

int cmd_adversary_sweep(const Options& o) {
  std::vector<int> blocks = o.sweep_blocks.empty() ? std::vector<int>{o.blocks} : o.sweep_blocks;
  std::string csv = adversary_csv_header() + "\n";
  for (int l : blocks) csv += adversary_csv_row(adversary_once(o, l)) + "\n";
  emit(o, csv);
  return kPass;
}

int cmd_adversary_verify(const Options& o) {
  if (o.report.empty()) throw UsageError("--report is required");
  std::ifstream f(o.report);
  if (!f) throw std::runtime_error("cannot read " + o.report);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  const json& body = doc.contains("result") ? doc.at("result") : doc;
  const bool ok = verify_adversary_report(adversary_from_json(body));
  std::cerr << (ok ? "report verified\n" : "report does NOT verify\n");
  return ok ? kPass : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mechanisms for min-max path and min-max arborescence procurement auctions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--jobs", o.jobs, "Parallel workers for independent trials");

  auto* gen = app.add_subcommand("gen", "Generate a chain instance");
  gen->add_option("family", o.family, "chain | expandedchain | dmst-chain")
      ->required()
      ->check(CLI::IsMember({"chain", "expandedchain", "dmst-chain"}));
  gen->add_option("--agents", o.agents)->check(CLI::PositiveNumber);
  gen->add_option("--blocks", o.blocks)->check(CLI::PositiveNumber);
  gen->add_option("--eps", o.eps, "Helper edge cost p/q");
  gen->add_option("--base-cost", o.base_cost, "Block edge cost p/q");

  auto* solve = app.add_subcommand("solve", "Exact optimum of an instance");
  solve->add_option("--instance", o.instance)->required();
  solve->add_option("--objective", o.objective)->check(CLI::IsMember({"min-sum", "min-max", "chain-dp"}));

  auto* vcg = app.add_subcommand("vcg", "VCG allocation and Clarke payments");
  vcg->add_option("--instance", o.instance)->required();

  auto* ptas = app.add_subcommand("ptas", "Min-max path approximation");
  ptas->require_subcommand(1)->fallthrough();
  auto* ptas_run = ptas->add_subcommand("run", "Run the approximation on an instance");
  ptas_run->add_option("--instance", o.instance)->required();
  ptas_run->add_option("--epsilon", o.epsilon, "Accuracy p/q");
  ptas_run->add_flag("--check-against-bruteforce", o.check_bruteforce);

  auto* audit = app.add_subcommand("audit", "Randomized truthfulness and monotonicity probes");
  audit->require_subcommand(1)->fallthrough();
  std::vector<CLI::App*> audits;
  for (const char* name : {"monotonicity", "truthfulness", "lemma1"}) {
    auto* sub = audit->add_subcommand(name);
    sub->add_option("--alg", o.alg)->check(CLI::IsMember(algorithm_names()));
    sub->add_option("--trials", o.trials);
    sub->add_option("--mode", o.mode)->check(CLI::IsMember({"path", "dmst"}));
    sub->add_option("--epsilon", o.epsilon, "Accuracy of --alg ptas");
    sub->add_option("--max-nodes", o.max_nodes);
    sub->add_option("--max-agents", o.max_agents);
    audits.push_back(sub);
  }

  auto* adversary = app.add_subcommand("adversary", "Lower-bound construction against an algorithm");
  adversary->require_subcommand(1)->fallthrough();
  auto* adv_run = adversary->add_subcommand("run");
  auto* adv_sweep = adversary->add_subcommand("sweep", "CSV of certified ratios over block counts");
  for (auto* sub : {adv_run, adv_sweep}) {
    sub->add_option("--alg", o.alg)->check(CLI::IsMember(algorithm_names()));
    sub->add_option("--agents", o.agents)->check(CLI::PositiveNumber);
    sub->add_option("--mode", o.mode)->check(CLI::IsMember({"path", "dmst"}));
    sub->add_option("--eps", o.eps, "Helper edge cost p/q (default from the block count)");
    sub->add_option("--epsilon", o.epsilon, "Accuracy of --alg ptas");
  }
  adv_run->add_option("--blocks", o.blocks)->check(CLI::PositiveNumber);
  adv_sweep->add_option("--blocks", o.sweep_blocks)->check(CLI::PositiveNumber);
  auto* adv_verify = adversary->add_subcommand("verify", "Re-check a saved adversary report");
  adv_verify->add_option("--report", o.report)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (solve->parsed()) return cmd_solve(o);
    if (vcg->parsed()) return cmd_vcg(o);
    if (ptas_run->parsed()) return cmd_ptas(o);
    for (auto* sub : audits)
      if (sub->parsed()) return cmd_audit(o, sub->get_name());
    if (adv_run->parsed()) return cmd_adversary_run(o);
    if (adv_sweep->parsed()) return cmd_adversary_sweep(o);
    if (adv_verify->parsed()) return cmd_adversary_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PivotalInfeasible& e) {
    std::cerr << "pivotal-infeasible agent " << e.agent << ": " << e.what() << "\n";
    return kUsage;
  } catch (const StructureError& e) {
    std::cerr << "structure error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPropertyFailure;
  }
  return kUsage;
}
