#include "mmech/algorithms.hpp"

#include "mmech/chains.hpp"
#include "mmech/pareto.hpp"

#include <stdexcept>

namespace mmech {

AllocationAlgorithm exact_chain_algorithm() {
  return {"exact-chain", [](const Instance& inst) {
            return chain_minmax_exact(inst, detect_block_indexing(inst)).witness;
          }};
}

AllocationAlgorithm brute_minmax_algorithm(BruteBudget budget) {
  return {"brute-minmax", [budget](const Instance& inst) { return brute_minmax(inst, budget).witness; }};
}

AllocationAlgorithm ptas_algorithm(const Rational& eps) {
  return {"ptas", [eps](const Instance& inst) { return minmax_ptas(inst, eps).report.witness; }};
}

AllocationAlgorithm fixed_algorithm() {
  return {"fixed", [](const Instance& inst) {
            return min_sum(inst.with_costs(std::vector<Rational>(inst.edge_count(), Rational(1)))).witness;
          }};
}

AllocationAlgorithm contrarian_algorithm() {
  return {"contrarian", [](const Instance& inst) {
            std::vector<Rational> flipped;
            flipped.reserve(static_cast<std::size_t>(inst.edge_count()));
            for (const Edge& e : inst.edges()) flipped.push_back(1 / (1 + e.cost));
            return min_sum(inst.with_costs(std::move(flipped))).witness;
          }};
}

AllocationAlgorithm make_algorithm(std::string_view name, const Rational& eps) {
  if (name == "vcg") return vcg_algorithm();
  if (name == "exact-chain") return exact_chain_algorithm();
  if (name == "brute-minmax") return brute_minmax_algorithm();
  if (name == "ptas") return ptas_algorithm(eps);
  if (name == "fixed") return fixed_algorithm();
  if (name == "contrarian") return contrarian_algorithm();
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<std::string> algorithm_names() {
  return {"vcg", "exact-chain", "brute-minmax", "ptas", "fixed", "contrarian"};
}

}  // namespace mmech
