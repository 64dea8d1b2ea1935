#include "helpers.hpp"

#include "mmech/algorithms.hpp"
#include "mmech/report.hpp"

#include <doctest.h>

using namespace mmech;

namespace {

// True when no number anywhere in `doc` is a float.
bool no_floats(const json& doc) {
  if (doc.is_number_float()) return false;
  if (doc.is_object() || doc.is_array())
    for (const auto& v : doc) if (!no_floats(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("outcome table") {
  const Instance inst = testing::parallel_pair(1, 3);
  const json j = outcome_to_json(inst, run_vcg(inst));
  REQUIRE(j["agents"].size() == 2);
  CHECK(j["agents"][0]["agent"] == 1);
  CHECK(j["agents"][0]["selected_edge_ids"] == json::array({0}));
  CHECK(j["agents"][0]["payment"] == "3");
  CHECK(j["agents"][0]["utility"] == "2");
  CHECK(j["agents"][1]["selected_edge_ids"] == json::array());
  CHECK(no_floats(j));
}

TEST_CASE("adversary reports round trip and stay verifiable") {
  for (const auto& [alg, mode] : {std::pair{vcg_algorithm(), ChainMode::Path}, std::pair{vcg_algorithm(), ChainMode::Dmst},
                                  std::pair{exact_chain_algorithm(), ChainMode::Path}}) {
    const AdversaryReport r = run_adversary(alg, {2, 16}, mode);
    const json j = adversary_to_json(r);
    CHECK(no_floats(j));
    const AdversaryReport back = adversary_from_json(json::parse(j.dump()));
    CHECK(adversary_to_json(back).dump() == j.dump());
    CHECK(verify_adversary_report(back));
  }
}

TEST_CASE("rationals in reports are strings") {
  const AdversaryReport r = run_adversary(vcg_algorithm(), {2, 8}, ChainMode::Path);
  const json j = adversary_to_json(r);
  CHECK(j["ratio"]["certified_ratio"].is_string());
  CHECK(j["ratio"]["algorithm_cost"] == "8");
  CHECK(j["eps"] == "1/16");
  CHECK(j["verdict"] == "ratio");
}

TEST_CASE("parse errors in reports name the field") {
  json j = adversary_to_json(run_adversary(vcg_algorithm(), {2, 4}, ChainMode::Path));
  j["ratio"]["opt_upper_bound"] = "x";
  try {
    adversary_from_json(j);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field == "ratio.opt_upper_bound");
  }
  j.erase("mode");
  CHECK_THROWS_AS(adversary_from_json(j), ParseError);
}

TEST_CASE("CSV rows") {
  CHECK(adversary_csv_header().find("certified_ratio") != std::string::npos);
  const std::string row = adversary_csv_row(run_adversary(vcg_algorithm(), {2, 64}, ChainMode::Path));
  CHECK(row.rfind("vcg,path,2,64,1/128,1,64,ratio,64,129/4,256/129,", 0) == 0);
  CHECK(row.substr(row.size() - 4) == ",3/2");
}

TEST_CASE("probe summaries carry the seed and replayable witnesses") {
  SampleSpec spec;
  const ProbeSummary s = probe_monotonicity(contrarian_algorithm(), spec, 99, 40);
  const json j = probe_to_json(s);
  CHECK(j["seed"] == 99);
  CHECK(j["violations"] == s.violations.size());
  CHECK(no_floats(j));
  for (std::size_t k = 0; k < s.violations.size(); ++k) {
    const ViolationWitness w = witness_from_json(j["witnesses"][k]);
    CHECK(witness_to_json(w).dump() == witness_to_json(s.violations[k]).dump());
  }
}
