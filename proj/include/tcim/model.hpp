#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tcim/graph.hpp"
#include "tcim/model_kind.hpp"
#include "tcim/rapg.hpp"
#include "tcim/rng.hpp"

namespace tcim {

// COICM breaks simultaneous activation ties in favour of source B.
inline constexpr bool kCoicmBPriority = true;

StorageLevel required_storage(ModelKind model);

// Incremental score of the committed S_B on one instance.
//
//   COICM:    score = covered ? 1 : 0
//   Distance: score = covered ? 1 : n_b / (n_a + n_b)   (0/0 = 0)
//   Wave:     score = p(root), recomputed on every commit
//
// `covered` means some committed B seed is strictly closer to the root than
// d(S_A, root) (for COICM: some committed B seed lies in V_R \ S_A at all).
// n_a and n_b count A and B seeds at distance d(S_A, root).
struct ScoreState {
  double score = 0.0;
  std::uint32_t n_a = 0;
  std::uint32_t n_b = 0;
  bool covered = false;
};

// f_R(S_B | S_A) from scratch. Members of S_B outside the instance are ignored.
// Throws ContractViolation when S_A and S_B overlap.
double score(ModelKind model, const RapgView& instance, const NodeSet& seeds_a,
             const NodeSet& seeds_b);

// State for S_B = {} (score 0).
ScoreState init_state(ModelKind model, const RapgView& instance, const NodeSet& seeds_a);

// Delta_R(u | S_A, S_B) without touching the state. `seeds_b` must hold the
// committed S_B (the Wave model reads it). Returns 0 when u is not in the
// instance; throws ContractViolation when u is in S_A or S_B.
double marginal_gain(ModelKind model, const RapgView& instance, const ScoreState& state,
                     const NodeSet& seeds_a, const NodeSet& seeds_b, NodeId u);

// State after adding u to S_B. `seeds_b` is the committed set before u.
ScoreState commit(ModelKind model, const RapgView& instance, const ScoreState& state,
                  const NodeSet& seeds_a, const NodeSet& seeds_b, NodeId u);

// Unchecked variants addressed by local index, used by the greedy selector.
// The caller guarantees instance.nodes[local] is in neither seed set.
double marginal_gain_at(ModelKind model, const RapgView& instance, const ScoreState& state,
                        const NodeSet& seeds_a, const NodeSet& seeds_b, std::size_t local);
ScoreState commit_at(ModelKind model, const RapgView& instance, const ScoreState& state,
                     const NodeSet& seeds_a, const NodeSet& seeds_b, std::size_t local);

// True when f_R({u} | S_A) = 1 for the node at `local` (membership in V_R').
bool covers_root_alone(ModelKind model, const RapgView& instance, const NodeSet& seeds_a,
                       std::size_t local);

// Probability-weighted B mass of one live-edge draw: the sum over all nodes of
// the probability that the node ends in state I_B. Coins are flipped lazily,
// one per edge, as the forward search reaches the edge's source.
double forward_simulate(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                        const NodeSet& seeds_b, RngStream& rng);

// Exact sigma(S_B | S_A) by enumerating every live-edge subset of the edges
// with 0 < p < 1. Refuses more than kExactSigmaMaxUncertainEdges such edges.
inline constexpr std::size_t kExactSigmaMaxUncertainEdges = 20;
double exact_sigma(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                   const NodeSet& seeds_b);

// Reusable forward propagation over a fixed live-edge rule. Keeps O(n) scratch
// between runs; one per thread.
// One live-edge world whose coins are flipped on first use and then remembered,
// so several propagations can run on the same draw.
class SharedWorld {
 public:
  explicit SharedWorld(const DirectedGraph& graph);

  bool live(std::size_t edge, RngStream& rng);
  // Forgets every flipped coin.
  void reset();

 private:
  std::span<const double> probs_;
  std::vector<std::uint8_t> state_;  // 0 unflipped, 1 dead, 2 live
  std::vector<std::size_t> touched_;
};

class ForwardPropagator {
 public:
  ForwardPropagator(const DirectedGraph& graph, const NodeSet& seeds_a, const NodeSet& seeds_b);

  // One live-edge draw with one lazily flipped coin per reached edge.
  double simulate(ModelKind model, RngStream& rng);
  // Same, reading coins from `world`.
  double simulate(ModelKind model, RngStream& rng, SharedWorld& world);

  // Deterministic run where `live[e]` says whether forward edge e is active.
  double evaluate(ModelKind model, std::span<const char> live);

 private:
  template <typename LiveEdge>
  double run(ModelKind model, LiveEdge&& live);

  const DirectedGraph& graph_;
  std::vector<NodeId> seeds_;          // S_A first, then S_B
  std::size_t a_count_ = 0;
  std::size_t words_ = 0;              // bitset words per node (Distance model)
  std::vector<std::uint32_t> dist_;
  std::vector<NodeId> queue_;
  std::vector<double> sum_;            // Wave: sum of predecessor p; COICM: B reached flag
  std::vector<std::uint32_t> count_;   // Wave: number of shortest-path predecessors
  std::vector<std::uint64_t> nearest_; // Distance: nearest-seed bitsets
};

}  // namespace tcim
