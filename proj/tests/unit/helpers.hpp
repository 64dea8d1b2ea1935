#pragma once

#include "mmech/graph.hpp"

#include <numeric>
#include <vector>

namespace testing {

using namespace mmech;

inline Instance parallel_pair(const Rational& c1, const Rational& c2) {
  return Instance(false, 2, Mode::Path, 0, 1, 2, {{0, 0, 1, 1, c1}, {1, 0, 1, 2, c2}});
}

// Union-find, used only by the subset oracle below.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

// Feasibility by degree counting and acyclicity, independent of validate_solution.
inline bool subset_feasible(const Instance& inst, const std::vector<EdgeId>& ids) {
  const int v = inst.node_count();
  std::vector<int> in(static_cast<std::size_t>(v), 0), out(static_cast<std::size_t>(v), 0),
      deg(static_cast<std::size_t>(v), 0);
  Dsu dsu(v);
  for (EdgeId id : ids) {
    const Edge& e = inst.edge(id);
    if (!dsu.unite(e.tail, e.head)) return false;  // any cycle, including self-loops and parallel pairs
    ++out[static_cast<std::size_t>(e.tail)];
    ++in[static_cast<std::size_t>(e.head)];
    ++deg[static_cast<std::size_t>(e.tail)];
    ++deg[static_cast<std::size_t>(e.head)];
  }
  if (inst.mode() == Mode::Arborescence) {
    if (static_cast<int>(ids.size()) != v - 1) return false;
    for (int x = 0; x < v; ++x)
      if (in[static_cast<std::size_t>(x)] != (x == inst.root() ? 0 : 1)) return false;
    return true;
  }
  const NodeId s = inst.source(), t = inst.target();
  if (s == t) return ids.empty();
  int touched = 0;
  for (int x = 0; x < v; ++x) {
    const auto k = static_cast<std::size_t>(x);
    if (deg[k] == 0) continue;
    ++touched;
    if (x == s || x == t) {
      if (deg[k] != 1) return false;
      if (inst.directed() && (x == s ? out[k] != 1 : in[k] != 1)) return false;
    } else {
      if (deg[k] != 2) return false;
      if (inst.directed() && (in[k] != 1 || out[k] != 1)) return false;
    }
  }
  if (deg[static_cast<std::size_t>(s)] == 0 || deg[static_cast<std::size_t>(t)] == 0) return false;
  // A forest where only s and t have degree 1 is a single s-t path.
  return static_cast<int>(ids.size()) == touched - 1;
}

// All feasible edge subsets by exhaustive enumeration; only for small edge counts.
inline std::vector<std::vector<EdgeId>> all_feasible_subsets(const Instance& inst) {
  std::vector<std::vector<EdgeId>> out;
  const int m = inst.edge_count();
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<EdgeId> ids;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1UL) ids.push_back(k);
    if (subset_feasible(inst, ids)) out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace testing
