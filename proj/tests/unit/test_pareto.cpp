#include "helpers.hpp"

#include "mmech/chains.hpp"
#include "mmech/pareto.hpp"
#include "mmech/sampling.hpp"
#include "mmech/solvers.hpp"

#include <doctest.h>

using namespace mmech;

namespace {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

std::vector<ObjectiveVector> target_vectors(const Instance& inst, const std::vector<ObjectiveVector>& w,
                                            const ParetoSet& set) {
  std::vector<ObjectiveVector> out;
  for (int label : set.at_target) {
    const auto ids = set.path(inst, label);
    CHECK(validate_solution(inst, Solution(ids)));
    out.push_back(path_objectives(w, ids));
  }
  return out;
}

}  // namespace

TEST_CASE("objective encoding") {
  const Instance inst(false, 2, Mode::Path, 0, 1, 3, {{0, 0, 1, 2, 5}, {1, 0, 1, 1, 0}});
  const auto w = encode_objectives(inst);
  CHECK(w[0] == ObjectiveVector{0, 5, 0});
  CHECK(w[1] == ObjectiveVector{0, 0, 0});
  const auto ex = expand_chain(gen_chain({2, 1}).instance, Rational(1, 4));
  CHECK(path_objectives(encode_objectives(ex.instance), ex.indexing.route(0, 1).rightward) ==
        ObjectiveVector{1, Rational(1, 4)});
}

TEST_CASE("preprocessing") {
  // Two-edge path of cost 2 + 2 against a direct edge of cost 10.
  const Instance inst(false, 3, Mode::Path, 0, 2, 2, {{0, 0, 1, 1, 2}, {1, 1, 2, 2, 2}, {2, 0, 2, 1, 10}});
  const PtasInput in = preprocess(inst, Rational(1, 2));
  CHECK(in.config.shortest_path == 4);
  CHECK(in.config.delta == Rational(1, 2));
  CHECK(in.pruned.edge_count() == 2);
  CHECK(in.original_id == std::vector<EdgeId>{0, 1});
  CHECK(in.weights[0] == ObjectiveVector{2, Rational(1, 2)});
  CHECK(in.config.ratio_bound <= Rational(4) / Rational(1, 2));
  CHECK_THROWS_AS(preprocess(inst, 0), std::invalid_argument);
  CHECK_THROWS_AS(preprocess(gen_dmst_chain({2, 1}).instance, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("zero shortest path short-circuits") {
  const Instance inst(false, 3, Mode::Path, 0, 2, 2, {{0, 0, 2, 1, 0}, {1, 0, 1, 2, 1}, {2, 1, 2, 2, 1}});
  const PtasResult r = minmax_ptas(inst, Rational(1, 4));
  CHECK(r.config.short_circuit);
  CHECK(r.report.value == 0);
  CHECK(r.report.witness == Solution({0}));
}

TEST_CASE("a single agent yields the shortest path") {
  SampleSpec spec;
  spec.max_agents = 1;
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(51, t);
    const Instance inst = sample_instance(rng, spec);
    CHECK(minmax_ptas(inst, Rational(1, 4)).report.value == shortest_path(inst).value);
    const PtasInput in = preprocess(inst, Rational(1, 4));
    if (in.config.short_circuit) continue;
    const ParetoSet set = pareto_eps(in.pruned, in.weights, Rational(1, 4), in.config.delta);
    REQUIRE(set.at_target.size() == 1);
    CHECK(path_objectives(in.weights, set.path(in.pruned, set.at_target[0]))[0] ==
          shortest_path(in.pruned.with_costs([&] {
            std::vector<Rational> c;
            for (const auto& w : in.weights) c.push_back(w[0]);
            return c;
          }())).value);
  }
}

TEST_CASE("two disjoint non-dominating paths are both kept") {
  const Rational d(1, 100);
  const Instance inst(false, 4, Mode::Path, 0, 3, 2,
                      {{0, 0, 1, 1, 1}, {1, 1, 3, 2, d}, {2, 0, 2, 2, 1}, {3, 2, 3, 1, d}});
  const auto w = encode_objectives(inst);
  const ParetoSet set = pareto_eps(inst, w, Rational(1, 4), d);
  const auto found = target_vectors(inst, w, set);
  CHECK(std::find(found.begin(), found.end(), ObjectiveVector{1, d}) != found.end());
  CHECK(std::find(found.begin(), found.end(), ObjectiveVector{d, 1}) != found.end());
}

TEST_CASE("coverage of the exact Pareto set on random instances") {
  SampleSpec spec;
  spec.max_nodes = 10;
  spec.min_agents = 2;
  spec.max_agents = 3;
  spec.costs = CostDistribution::Integers1To10;
  for (const Rational eps : {Rational(1, 4), Rational(1, 10), Rational(1)}) {
    for (std::uint64_t t = 0; t < 40; ++t) {
      Rng rng = trial_rng(52, t);
      const Instance inst = sample_instance(rng, spec);
      const PtasInput in = preprocess(inst, eps);
      const ParetoSet set = pareto_eps(in.pruned, in.weights, eps, in.config.delta);
      const auto found = target_vectors(in.pruned, in.weights, set);
      std::vector<ObjectiveVector> all;
      for_each_feasible(in.pruned, [&](const std::vector<EdgeId>& ids) {
        all.push_back(path_objectives(in.weights, ids));
        return true;
      });
      for (const auto& p : all) {
        if (std::any_of(all.begin(), all.end(), [&](const auto& q) { return dominates(q, p); })) continue;
        const bool covered = std::any_of(found.begin(), found.end(), [&](const auto& f) {
          for (std::size_t k = 0; k < p.size(); ++k)
            if (f[k] > (1 + eps) * p[k]) return false;
          return true;
        });
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("modified weights cost at most |x| delta more per agent") {
  SampleSpec spec;
  spec.max_nodes = 9;
  spec.costs = CostDistribution::Integers1To10;
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = trial_rng(53, t);
    const Instance inst = sample_instance(rng, spec);
    const PtasInput in = preprocess(inst, Rational(1, 4));
    const auto original = encode_objectives(in.pruned);
    for_each_feasible(in.pruned, [&](const std::vector<EdgeId>& ids) {
      const auto before = path_objectives(original, ids);
      const auto after = path_objectives(in.weights, ids);
      const Rational size = static_cast<long>(ids.size());
      for (std::size_t k = 0; k < before.size(); ++k) {
        CHECK(after[k] >= before[k]);
        CHECK(after[k] <= before[k] + size * in.config.delta);
      }
      return true;
    });
  }
}

TEST_CASE("PTAS stays within (1+eps)^2 of the optimum") {
  SampleSpec spec;
  spec.max_nodes = 10;
  for (const Rational eps : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    for (std::uint64_t t = 0; t < 60; ++t) {
      Rng rng = trial_rng(54, t);
      const Instance inst = sample_instance(rng, spec);
      const PtasResult r = minmax_ptas(inst, eps);
      CHECK(validate_solution(inst, r.report.witness));
      CHECK(cost_summary(inst, r.report.witness).max_cost == r.report.value);
      CHECK(r.report.value <= (1 + eps) * (1 + eps) * brute_minmax(inst).value);
    }
  }
  const auto ex = expand_chain(gen_chain({2, 2}).instance, Rational(1, 4));
  CHECK(minmax_ptas(ex.instance, Rational(1, 4)).report.value <= Rational(25, 16) * brute_minmax(ex.instance).value);
}

TEST_CASE("decreasing epsilon never increases the returned value") {
  SampleSpec spec;
  spec.max_nodes = 10;
  spec.costs = CostDistribution::Integers1To10;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = trial_rng(55, t);
    const Instance inst = sample_instance(rng, spec);
    Rational previous = -1;
    for (const Rational eps : {Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)}) {
      const Rational value = minmax_ptas(inst, eps).report.value;
      if (sgn(previous) >= 0) CHECK(value <= previous);
      previous = value;
    }
  }
}
