// Acceptance checks: one PASS/FAIL line per criterion.
#include "mmech/adversary.hpp"
#include "mmech/algorithms.hpp"
#include "mmech/audit.hpp"
#include "mmech/chains.hpp"
#include "mmech/pareto.hpp"
#include "mmech/sampling.hpp"
#include "mmech/solvers.hpp"
#include "mmech/vcg.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mmech;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_seconds) {
    out.pass = false;
    out.detail += " (over time limit)";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s [%.2fs] %s\n", out.pass ? "PASS" : "FAIL", number, title, secs, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const Rational& q) { return to_string(q) + " (~" + std::to_string(to_double(q)) + ")"; }

Outcome adversary_ratio(const ChainSpec& spec, ChainMode mode, const Rational& threshold, double expect_measured) {
  const AdversaryReport rep = run_adversary(vcg_algorithm(), spec, mode);
  if (!rep.ratio) return {false, "no ratio witness"};
  const RatioWitness& r = *rep.ratio;
  const bool verified = verify_adversary_report(rep);
  const bool bounded = r.opt_upper_bound <= r.closed_form;
  const bool ok = verified && bounded && r.certified_ratio >= threshold && to_double(r.certified_ratio) >= expect_measured;
  return {ok, "i*=" + std::to_string(rep.heavy) + " cost=" + to_string(r.algorithm_cost) +
                  " ub=" + to_string(r.opt_upper_bound) + " ratio=" + fmt(r.certified_ratio) +
                  " verified=" + (verified ? "yes" : "no")};
}

bool componentwise_covered(const ObjectiveVector& have, const ObjectiveVector& want, const Rational& factor) {
  for (std::size_t k = 0; k < want.size(); ++k)
    if (have[k] > factor * want[k]) return false;
  return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

// Applies the adversary's transformation for `agent` in a block-structured instance.
Instance transform(const Instance& inst, const Solution& sel, AgentId agent, const Rational& eps) {
  std::vector<Rational> costs = inst.costs();
  for (EdgeId id : inst.edges_of(agent)) {
    auto& c = costs[static_cast<std::size_t>(id)];
    c = sel.contains(id) ? Rational(0) : c + eps;
  }
  return inst.with_costs(std::move(costs));
}

}  // namespace

int main() {
  criterion(1, "adversary vs VCG, path, n=2, l=64, eps=1/128", 10.0, [] {
    return adversary_ratio({2, 64, 1, Rational(1, 128)}, ChainMode::Path, Rational(3, 2), 1.9);
  });

  criterion(2, "adversary vs VCG, path, n=3, l=300, eps=1/600", 60.0, [] {
    return adversary_ratio({3, 300, 1, Rational(1, 600)}, ChainMode::Path, Rational(66, 25), 0.0);
  });

  criterion(3, "adversary vs VCG, dmst, n=2, l=64, eps=1/512", 60.0, [] {
    return adversary_ratio({2, 64, 1, Rational(1, 512)}, ChainMode::Dmst, Rational(3, 2), 0.0);
  });

  criterion(4, "adversary vs exact chain solver, path, n=2, l=40", 30.0, [] {
    const AdversaryReport rep = run_adversary(exact_chain_algorithm(), {2, 40, 1, std::nullopt}, ChainMode::Path);
    if (!rep.violation || !rep.violation->monotonicity) return Outcome{false, "no monotonicity witness"};
    const MonotonicityTerms& m = *rep.violation->monotonicity;
    const Instance structure = adversary_instance(rep.spec, rep.mode).instance;
    const bool verified = verify_witness(structure, *rep.violation) && verify_adversary_report(rep);
    const bool strict = m.t_x + m.tp_xp > m.t_xp + m.tp_x;
    return Outcome{verified && strict, "agent " + std::to_string(rep.violation->perturbation.agent) + ": " +
                                           to_string(m.t_x) + " + " + to_string(m.tp_xp) + " > " + to_string(m.t_xp) +
                                           " + " + to_string(m.tp_x)};
  });

  criterion(5, "PTAS within (5/4)^2 of brute force on 100 random paths", 60.0, [] {
    SampleSpec spec;
    spec.max_nodes = 12;
    spec.max_agents = 3;
    spec.costs = CostDistribution::Integers1To10;
    const Rational eps(1, 4), bound = (1 + eps) * (1 + eps);
    int bad = 0;
    Rational worst = 0;
    for (int t = 0; t < 100; ++t) {
      Rng rng = trial_rng(5005, static_cast<std::uint64_t>(t));
      const Instance inst = sample_instance(rng, spec);
      const Rational opt = brute_minmax(inst).value;
      const PtasResult res = minmax_ptas(inst, eps);
      if (!validate_solution(inst, res.report.witness) || res.report.value > bound * opt) ++bad;
      if (sgn(opt) > 0 && res.report.value / opt > worst) worst = res.report.value / opt;
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations, worst ratio " + fmt(worst)};
  });

  criterion(6, "Pareto set (1+eps)-covers every Pareto path on 50 random instances", 60.0, [] {
    SampleSpec spec;
    spec.max_nodes = 10;
    spec.min_agents = spec.max_agents = 2;
    spec.costs = CostDistribution::Integers1To10;
    const Rational eps(1, 4);
    int uncovered = 0, checked = 0;
    for (int t = 0; t < 50; ++t) {
      Rng rng = trial_rng(6006, static_cast<std::uint64_t>(t));
      const Instance inst = sample_instance(rng, spec);
      const PtasInput in = preprocess(inst, eps);
      const ParetoSet set = pareto_eps(in.pruned, in.weights, eps, in.config.delta);
      std::vector<ObjectiveVector> found;
      for (int label : set.at_target) found.push_back(path_objectives(in.weights, set.path(in.pruned, label)));
      std::vector<ObjectiveVector> all;
      for_each_feasible(in.pruned, [&](const std::vector<EdgeId>& ids) {
        all.push_back(path_objectives(in.weights, ids));
        return true;
      });
      for (const auto& p : all) {
        bool pareto = true;
        for (const auto& q : all)
          if (dominates(q, p)) pareto = false;
        if (!pareto) continue;
        ++checked;
        bool covered = false;
        for (const auto& f : found) covered = covered || componentwise_covered(f, p, 1 + eps);
        if (!covered) ++uncovered;
      }
    }
    return Outcome{uncovered == 0 && checked > 0,
                   std::to_string(checked) + " Pareto paths, " + std::to_string(uncovered) + " uncovered"};
  });

  criterion(7, "SC/n <= OPT <= SC and VCG max cost <= n*OPT on 200 instances per mode", 120.0, [] {
    int bad = 0;
    for (Mode mode : {Mode::Path, Mode::Arborescence}) {
      SampleSpec spec;
      spec.mode = mode;
      spec.max_nodes = 8;
      for (int t = 0; t < 200; ++t) {
        Rng rng = trial_rng(mode == Mode::Path ? 7007 : 7008, static_cast<std::uint64_t>(t));
        const Instance inst = sample_instance(rng, spec);
        const Rational sc = min_sum(inst).value;
        const Rational opt = brute_minmax(inst).value;
        const Rational n = inst.agent_count();
        const Rational vcg_cost = cost_summary(inst, vcg_allocate(inst)).max_cost;
        if (!(sc / n <= opt && opt <= sc && vcg_cost <= n * opt)) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations over 400 instances"};
  });

  criterion(8, "VCG truthfulness and monotonicity probes, 1000 each per mode", 120.0, [] {
    int violations = 0, trials = 0;
    for (Mode mode : {Mode::Path, Mode::Arborescence}) {
      SampleSpec spec;
      spec.mode = mode;
      spec.min_agents = 2;
      spec.require_payable = true;
      const ProbeSummary truth = probe_truthfulness(vcg_mechanism(), spec, 8008, 1000, 4);
      const ProbeSummary mono = probe_monotonicity(vcg_algorithm(), spec, 8009, 1000, 4);
      violations += static_cast<int>(truth.violations.size() + mono.violations.size());
      trials += truth.trials + mono.trials;
    }
    return Outcome{violations == 0 && trials == 4000,
                   std::to_string(trials) + " probes, " + std::to_string(violations) + " violations"};
  });

  criterion(9, "Clarke example t=(1,3)", 10.0, [] {
    const Instance inst(false, 2, Mode::Path, 0, 1, 2, {{0, 0, 1, 1, 1}, {1, 0, 1, 2, 3}});
    const MechanismOutcome out = run_vcg(inst);
    const bool ok = out.allocation == Solution({0}) && out.payments == std::vector<Rational>{3, 0} &&
                    utility(inst, out, 1) == 2 && utility(inst, out, 2) == 0;
    return Outcome{ok, "P=(" + to_string(out.payments[0]) + "," + to_string(out.payments[1]) + ") u=(" +
                           to_string(utility(inst, out, 1)) + "," + to_string(utility(inst, out, 2)) + ")"};
  });

  criterion(10, "block DP equals brute force on all chains with l <= 6, n <= 3", 60.0, [] {
    long profiles = 0, mismatches = 0;
    const BruteBudget budget{64, 50'000'000};
    for (int n = 2; n <= 3; ++n) {
      for (int l = 1; l <= 6; ++l) {
        const ChainSpec spec{n, l, 1, std::nullopt};
        const Rational eps = spec.eps(ChainMode::Path);
        const ChainInstance plain = gen_chain(spec);
        const ChainInstance expanded = expand_chain(plain.instance, eps);
        long assignments = 1;
        for (int k = 0; k < l; ++k) assignments *= n;
        for (long code = 0; code < assignments; ++code) {
          std::vector<AgentId> pick;
          std::vector<int> counts(static_cast<std::size_t>(n), 0);
          for (long c = code; static_cast<int>(pick.size()) < l; c /= n) {
            pick.push_back(static_cast<AgentId>(c % n) + 1);
            ++counts[static_cast<std::size_t>(pick.back() - 1)];
          }
          AgentId heavy = 1;
          for (AgentId i = 2; i <= n; ++i)
            if (counts[static_cast<std::size_t>(i - 1)] > counts[static_cast<std::size_t>(heavy - 1)]) heavy = i;
          for (const ChainInstance* ci : {&plain, &expanded}) {
            std::vector<EdgeId> ids;
            for (int k = 0; k < l; ++k) {
              const auto& r = ci->indexing.route(k, pick[static_cast<std::size_t>(k)]).rightward;
              ids.insert(ids.end(), r.begin(), r.end());
            }
            const Solution sel(std::move(ids));
            Instance profile = ci->instance;
            for (AgentId a = 1; a <= n; ++a) {
              if (a != heavy) profile = transform(profile, sel, a, eps);
              if (a != heavy || a == 1) {
                const OptimumReport dp = chain_minmax_exact(profile, ci->indexing);
                const OptimumReport bf = brute_minmax(profile, budget);
                ++profiles;
                if (dp.value != bf.value || !(dp.witness == bf.witness)) ++mismatches;
              }
            }
          }
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(profiles) + " profiles, " + std::to_string(mismatches) +
                                        " mismatches"};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
