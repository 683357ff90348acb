#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "tcim/graph.hpp"
#include "tcim/model_kind.hpp"
#include "tcim/rng.hpp"

namespace tcim {

// Hop distance used for d(S_A, root) when no S_A node was reached. Any value
// above n - 1 means "unreachable".
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// Read-only view of one reverse accessible pointed graph (RAPG).
//
// Nodes are stored layer by layer in discovery order, so local index 0 is the
// root and dist is nondecreasing along the local index. Shortest-path edges
// are stored per target as the local ids of its predecessors, all of which sit
// one hop farther from the root. Depending on the storage level of the owning
// pool, `dist` and the predecessor lists may be empty.
struct RapgView {
  std::span<const NodeId> nodes;
  std::span<const std::uint32_t> dist;
  std::span<const std::uint32_t> pred_end;  // cumulative predecessor counts per local node
  std::span<const std::uint32_t> preds;     // local ids
  std::uint32_t d_a = kUnreachable;

  NodeId root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
  bool a_reached() const { return d_a != kUnreachable; }

  std::span<const std::uint32_t> predecessors(std::size_t local) const {
    const std::uint32_t begin = local == 0 ? 0 : pred_end[local - 1];
    return preds.subspan(begin, pred_end[local] - begin);
  }

  // Local index of `u`, or size() when u is not part of the instance.
  std::size_t find(NodeId u) const;
};

// An owned RAPG instance as produced by the sampler.
struct RapgInstance {
  std::vector<NodeId> nodes;
  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> pred_end;
  std::vector<std::uint32_t> preds;
  std::uint32_t d_a = kUnreachable;
  std::uint64_t coin_count = 0;

  NodeId root() const { return nodes.front(); }
  std::size_t edge_count() const { return preds.size(); }
  RapgView view() const { return {nodes, dist, pred_end, preds, d_a}; }

  // Shortest-path edges as (source, target) node pairs.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  void clear();
};

// How much of each instance a pool keeps. Scoring under COICM only needs the
// node list, the Distance-based model also needs hop distances and the Wave
// model needs the full shortest-path structure.
enum class StorageLevel { kNodes, kNodesAndDist, kFull };

// Flat storage for many instances.
class RapgPool {
 public:
  explicit RapgPool(StorageLevel level = StorageLevel::kFull);

  void append(const RapgInstance& instance);
  void append(RapgPool&& other);
  void clear();

  std::size_t size() const { return d_a_.size(); }
  bool empty() const { return d_a_.empty(); }
  RapgView operator[](std::size_t i) const;
  StorageLevel level() const { return level_; }

  std::size_t node_slots() const { return nodes_.size(); }
  std::size_t edge_slots() const { return preds_.size(); }

  // Bytes held by node and edge slots plus per-instance headers.
  std::size_t memory_bytes() const;

 private:
  StorageLevel level_;
  std::vector<std::uint64_t> node_begin_{0};
  std::vector<std::uint64_t> pred_begin_{0};
  std::vector<std::uint32_t> d_a_;
  std::vector<NodeId> nodes_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> pred_end_;
  std::vector<std::uint32_t> preds_;
};

// Randomized reverse BFS from a uniform root, flipping one coin per examined
// in-edge and stopping after the layer in which the first S_A node appears.
// Holds O(n) scratch space, so one sampler per thread.
class RapgSampler {
 public:
  RapgSampler(const DirectedGraph& graph, const NodeSet& seeds_a);

  void sample(RngStream& rng, RapgInstance& out);
  RapgInstance sample(RngStream& rng) {
    RapgInstance out;
    sample(rng, out);
    return out;
  }

  // Same search from a fixed root; used by golden tests.
  void sample_from(NodeId root, RngStream& rng, RapgInstance& out);

  const DirectedGraph& graph() const { return graph_; }

 private:
  const DirectedGraph& graph_;
  std::vector<char> is_a_;
  std::vector<std::uint32_t> local_;
};

RapgInstance sample_rapg(const DirectedGraph& graph, const NodeSet& seeds_a, RngStream& rng);

// w(R): number of arcs of the full graph pointing into
// V_R' = {u in V_R \ S_A : f_R({u} | S_A) = 1}. For COICM V_R' is V_R \ S_A;
// for the Distance-based and Wave models it is the nodes strictly closer to the
// root than d(S_A, root).
std::size_t rapg_width(const RapgView& instance, const DirectedGraph& graph, ModelKind model,
                       const NodeSet& seeds_a);

// alpha(R) = 1 - (1 - w / m')^k, with width clamped to m'. Returns 0 when m' = 0.
double alpha(std::size_t width, std::size_t m_prime, std::size_t k);

}  // namespace tcim
