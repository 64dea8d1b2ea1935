#pragma once

#include "mmech/graph.hpp"

#include <optional>
#include <vector>

namespace mmech {

enum class ChainMode { Path, Dmst };

const char* to_string(ChainMode mode);

/// Parameters of the CHAIN family: `blocks` blocks of `agents` parallel routes.
struct ChainSpec {
  int agents = 2;
  int blocks = 1;
  Rational base_cost = 1;
  /// Helper edge cost. Unset means the default for the mode:
  /// 1/(2*blocks) for paths, 1/(4*blocks*agents) for the directed construction.
  std::optional<Rational> helper_eps;

  Rational eps(ChainMode mode) const;
  /// True when eps is unset or equals the default for `mode`.
  bool uses_default_eps(ChainMode mode) const;
  /// Throws std::invalid_argument unless blocks >= 1, agents >= 2 and 0 < eps < base_cost.
  void validate(ChainMode mode) const;
};

/// One route through a block. For the directed construction `rightward` is
/// FULLPATH(i, k) in traversal order and `leftward[j]` is paired with
/// `rightward[j + 1]`.
struct BlockPath {
  std::vector<EdgeId> rightward;
  std::vector<EdgeId> leftward;
};

/// blocks[k][i - 1] is agent i's route in block k (0-based block index).
struct BlockIndexing {
  int agents = 0;
  std::vector<std::vector<BlockPath>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  const BlockPath& route(int block, AgentId agent) const {
    return blocks.at(static_cast<std::size_t>(block)).at(static_cast<std::size_t>(agent - 1));
  }
};

struct ChainInstance {
  Instance instance;
  BlockIndexing indexing;
};

/// Undirected path-mode CHAIN: nodes u_1..u_{l+1} (ids 0..l), edge of agent i
/// in block k has id k*n + (i-1) and cost base_cost.
ChainInstance gen_chain(const ChainSpec& spec);

/// Recovers the block indexing of an instance produced by gen_chain.
BlockIndexing chain_indexing(const Instance& chain);

/// Recovers the block indexing of an instance laid out like expand_chain's output.
BlockIndexing expanded_chain_indexing(const Instance& inst);

/// Tries the CHAIN layout, then the EXPANDEDCHAIN layout; StructureError if neither fits.
BlockIndexing detect_block_indexing(const Instance& inst);

/// EXPANDEDCHAIN: each block edge of agent i becomes an n-edge path whose j-th
/// edge belongs to agent j; the owner-i edge keeps the block edge's cost, the
/// others cost `eps`. Throws StructureError if `chain` is not a CHAIN.
ChainInstance expand_chain(const Instance& chain, const Rational& eps);

/// Directed arborescence-mode chain rooted at u_1. Route i of each block has n
/// rightward edges owned by i, i+1, ... (cyclically), the first at base cost
/// and the rest at eps, plus n-1 leftward eps edges paired with the non-first
/// rightward edges and owned by the same agent.
ChainInstance gen_dmst_chain(const ChainSpec& spec);

/// Agent i of block k counts as selected when every rightward edge of its route is in `sol`.
bool route_selected(const BlockIndexing& idx, const Solution& sol, int block, AgentId agent);

}  // namespace mmech
