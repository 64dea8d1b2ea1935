#include "mmech/adversary.hpp"
#include "mmech/algorithms.hpp"
#include "mmech/solvers.hpp"

#include <doctest.h>

using namespace mmech;

TEST_CASE("VCG on the path chain: stable steps and a ratio witness") {
  const AdversaryReport r = run_adversary(vcg_algorithm(), {2, 64}, ChainMode::Path);
  REQUIRE(r.ratio.has_value());
  CHECK_FALSE(r.violation.has_value());
  CHECK(r.heavy == 1);
  CHECK(r.selections == std::vector<int>{64, 0});
  REQUIRE(r.trace.size() == 2);
  for (const AdversaryStep& s : r.trace) {
    CHECK(s.lemma1_stable);
    CHECK(s.structure_stable);
    CHECK(s.allocation == r.trace.front().allocation);
  }
  CHECK(r.ratio->algorithm_cost == 64);
  CHECK(r.ratio->closed_form == Rational(133, 4));
  CHECK(r.ratio->opt_upper_bound <= r.ratio->closed_form);
  CHECK(r.ratio->opt_upper_bound <= Rational(64, 2) + 4);
  CHECK(r.ratio->certified_ratio >= Rational(3, 2));
  REQUIRE(r.ratio->theory_bound.has_value());
  CHECK(*r.ratio->theory_bound == Rational(3, 2));
  CHECK(verify_adversary_report(r));
}

TEST_CASE("VCG meets the n - 4n^3/l bound in both modes") {
  for (ChainMode mode : {ChainMode::Path, ChainMode::Dmst}) {
    for (int n : {2, 3}) {
      for (int l : {40, 64, 300}) {
        CAPTURE(n);
        CAPTURE(l);
        const AdversaryReport r = run_adversary(vcg_algorithm(), {n, l}, mode);
        REQUIRE(r.ratio.has_value());
        REQUIRE(r.ratio->theory_bound.has_value());
        CHECK(r.ratio->certified_ratio >= *r.ratio->theory_bound);
        CHECK(r.ratio->opt_upper_bound <= r.ratio->closed_form);
        const int heavy = r.selections[static_cast<std::size_t>(r.heavy - 1)];
        CHECK(r.ratio->opt_upper_bound <= Rational(heavy, n) + 4);
        CHECK(verify_adversary_report(r));
      }
    }
  }
}

TEST_CASE("directed chain: transformation order runs n..2 relative to the heavy agent") {
  const AdversaryReport r = run_adversary(vcg_algorithm(), {3, 6}, ChainMode::Dmst);
  REQUIRE(r.ratio.has_value());
  const AgentId h = r.heavy;
  auto at = [&](int pos) { return ((h - 1 + pos - 1) % 3) + 1; };
  CHECK(r.order == std::vector<AgentId>{at(3), at(2)});
  for (const AdversaryStep& s : r.trace) CHECK(s.structure_stable);
}

TEST_CASE("an exact min-max algorithm is caught violating monotonicity") {
  const AdversaryReport r = run_adversary(exact_chain_algorithm(), {2, 40}, ChainMode::Path);
  REQUIRE(r.violation.has_value());
  CHECK_FALSE(r.ratio.has_value());
  REQUIRE(r.violation->monotonicity.has_value());
  const MonotonicityTerms& m = *r.violation->monotonicity;
  CHECK(m.t_x + m.tp_xp > m.t_xp + m.tp_x);
  CHECK(verify_witness(adversary_instance(r.spec, r.mode).instance, *r.violation));
  CHECK(verify_adversary_report(r));
  CHECK_FALSE(r.trace.back().lemma1_stable);
}

TEST_CASE("brute force as the algorithm: the stability witness reproduces") {
  const AdversaryReport r = run_adversary(brute_minmax_algorithm({64, 50'000'000}), {2, 6}, ChainMode::Path);
  CHECK(r.ratio.has_value() != r.violation.has_value());
  CHECK(verify_adversary_report(r));
  if (r.violation) {
    const Instance base = adversary_instance(r.spec, r.mode).instance.with_costs(r.violation->base_costs);
    const auto again = check_lemma1_stability(brute_minmax_algorithm({64, 50'000'000}), base, r.violation->perturbation);
    REQUIRE(again.has_value());
    CHECK(verify_witness(base, *again));
  }
}

TEST_CASE("pigeonhole and dichotomy over several algorithms") {
  for (const auto& alg : {vcg_algorithm(), fixed_algorithm(), contrarian_algorithm(), exact_chain_algorithm(),
                          ptas_algorithm(Rational(1, 4))}) {
    for (int n : {2, 3}) {
      for (int l : {1, 5, 12}) {
        if (alg.name == "ptas" && n * l > 24) continue;  // two bucketed objectives over 85 nodes take minutes
        CAPTURE(alg.name);
        const AdversaryReport r = run_adversary(alg, {n, l}, ChainMode::Path);
        const int heavy = r.selections[static_cast<std::size_t>(r.heavy - 1)];
        CHECK(heavy * n >= l);
        CHECK(r.ratio.has_value() != r.violation.has_value());
        CHECK(verify_adversary_report(r));
      }
    }
  }
  for (const auto& alg : {vcg_algorithm(), fixed_algorithm(), contrarian_algorithm()}) {
    const AdversaryReport r = run_adversary(alg, {3, 7}, ChainMode::Dmst);
    CHECK(r.ratio.has_value() != r.violation.has_value());
    CHECK(verify_adversary_report(r));
  }
}

TEST_CASE("upper bound and certified ratio against exact optima at small scale") {
  for (ChainMode mode : {ChainMode::Path, ChainMode::Dmst}) {
    for (int n : {2, 3}) {
      for (int l = 1; l <= 6; ++l) {
        if (mode == ChainMode::Dmst && n + l > 4) continue;  // brute force over arborescences stays small
        const AdversaryReport r = run_adversary(vcg_algorithm(), {n, l}, mode);
        REQUIRE(r.ratio.has_value());
        const Instance final_profile = adversary_instance(r.spec, r.mode).instance.with_costs(r.ratio->final_costs);
        const Rational opt = brute_minmax(final_profile, {64, 50'000'000}).value;
        CHECK(r.ratio->opt_upper_bound >= opt);
        CHECK(r.ratio->certified_ratio <= r.ratio->algorithm_cost / opt);
      }
    }
  }
}

TEST_CASE("closed form under the dmst default eps") {
  const AdversaryReport r = run_adversary(vcg_algorithm(), {2, 64, 1, Rational(1, 512)}, ChainMode::Dmst);
  REQUIRE(r.ratio.has_value());
  CHECK(r.ratio->opt_upper_bound <= 36);
  CHECK(r.ratio->theory_bound.has_value());
}

TEST_CASE("custom eps omits the theory bound") {
  const AdversaryReport r = run_adversary(vcg_algorithm(), {2, 64, 1, Rational(1, 1000)}, ChainMode::Path);
  REQUIRE(r.ratio.has_value());
  CHECK_FALSE(r.ratio->theory_bound.has_value());
}

TEST_CASE("precondition and feasibility errors") {
  CHECK_THROWS_AS(run_adversary(vcg_algorithm(), {2, 4, 2}, ChainMode::Path), std::invalid_argument);
  const AllocationAlgorithm broken{"empty", [](const Instance&) { return Solution(); }};
  CHECK_THROWS_AS(run_adversary(broken, {2, 4}, ChainMode::Path), FeasibilityError);
  try {
    run_adversary(broken, {2, 1}, ChainMode::Path);
  } catch (const FeasibilityError& e) {
    CHECK(std::string(e.what()).find("profile [1,1/2,1/2,1]") != std::string::npos);
  }
}

TEST_CASE("tampered reports fail verification") {
  AdversaryReport r = run_adversary(vcg_algorithm(), {2, 8}, ChainMode::Path);
  REQUIRE(verify_adversary_report(r));
  AdversaryReport bad = r;
  bad.ratio->certified_ratio += 1;
  CHECK_FALSE(verify_adversary_report(bad));
  bad = r;
  bad.ratio->opt_upper_bound -= Rational(1, 2);
  CHECK_FALSE(verify_adversary_report(bad));
  bad = r;
  bad.ratio->final_costs[0] = 5;
  CHECK_FALSE(verify_adversary_report(bad));
  bad = r;
  bad.violation = ViolationWitness{};
  CHECK_FALSE(verify_adversary_report(bad));
}
