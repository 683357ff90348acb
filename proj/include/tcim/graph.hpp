#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tcim {

using NodeId = std::uint32_t;
inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

struct Edge {
  NodeId source;
  NodeId target;
  double prob;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Membership over [0, n) with O(1) lookup; iteration follows insertion order.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : member_(universe, 0) {}
  NodeSet(std::size_t universe, std::span<const NodeId> nodes);

  // Returns false when the node was already present. Throws DomainError for
  // nodes outside the universe.
  bool insert(NodeId u);
  bool contains(NodeId u) const { return u < member_.size() && member_[u] != 0; }

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t universe() const { return member_.size(); }

  std::span<const NodeId> members() const { return order_; }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

  // Members in ascending order (a copy).
  std::vector<NodeId> sorted() const;

 private:
  std::vector<NodeId> order_;
  std::vector<char> member_;
};

bool disjoint(const NodeSet& a, const NodeSet& b);

// Immutable directed graph with per-edge activation probabilities, stored as
// forward and reverse CSR arrays. Every edge length is 1.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Builds a graph from an edge multiset. Self-loops are dropped and parallel
  // arcs are merged, keeping the larger probability. Node ids must be < n and
  // probabilities must lie in [0, 1].
  static DirectedGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                                  bool probabilities_assigned = true);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const double> out_probs(NodeId u) const {
    return {out_probs_.data() + out_offsets_[u], out_probs_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::span<const double> in_probs(NodeId v) const {
    return {in_probs_.data() + in_offsets_[v], in_probs_.data() + in_offsets_[v + 1]};
  }
  // Index of u's first forward edge; forward edges are numbered 0..m-1 in
  // (source, target) order.
  std::size_t out_edge_begin(NodeId u) const { return out_offsets_[u]; }
  std::span<const double> forward_probs() const { return out_probs_; }
  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  // False when the edges were loaded without a probability column and still
  // carry the 0 placeholder.
  bool probabilities_assigned() const { return probabilities_assigned_; }

  // All edges ordered by (source, target), probabilities from the forward side.
  std::vector<Edge> edges() const;

  // Sort-and-compare check that forward and reverse adjacency hold the same
  // edge multiset with equal probabilities.
  bool adjacency_consistent() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b);

 private:
  std::size_t node_count_ = 0;
  bool probabilities_assigned_ = true;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<double> out_probs_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_probs_;
};

enum class Directedness { kDirected, kUndirected };

// Reads `u v [p]` lines; `#` lines are comments, except that a leading
// `# nodes: N` comment fixes a lower bound on the node count. Undirected input
// expands each line into both arcs.
DirectedGraph load_edge_list(std::istream& in, Directedness directedness);
DirectedGraph load_edge_list_file(const std::string& path, Directedness directedness);

// Writes the `# nodes: N` header followed by one `u v [p]` line per arc. The
// probability column is written only when probabilities are assigned and
// uses round-trip precision.
void write_edge_list(std::ostream& out, const DirectedGraph& graph);
void write_edge_list_file(const std::string& path, const DirectedGraph& graph);

// Weighted cascade: every arc u->v gets p = 1 / in_degree(v).
DirectedGraph assign_weighted_ic(const DirectedGraph& graph);

// Every arc gets the same probability p in [0, 1].
DirectedGraph assign_uniform_probability(const DirectedGraph& graph, double p);

// m' = number of arcs whose target is outside `blocked`.
std::size_t restricted_edge_count(const DirectedGraph& graph, const NodeSet& blocked);

enum class SyntheticKind { kErdosRenyi, kRandomKOut };

// Deterministic generators without self-loops; probabilities are left
// unassigned. `param` is the arc probability for Erdos-Renyi and the per-node
// out-degree for random k-out.
DirectedGraph generate_synthetic(SyntheticKind kind, std::size_t node_count, double param,
                                 std::uint64_t seed);

}  // namespace tcim
