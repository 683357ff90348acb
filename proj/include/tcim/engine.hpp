#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tcim/graph.hpp"
#include "tcim/model.hpp"
#include "tcim/rapg.hpp"

namespace tcim {

// RNG stream indices of the three sampling phases.
enum class Phase : std::uint64_t { kEstimate = 0, kRefine = 1, kSelect = 2 };

// Instances are drawn in blocks; every block has its own RNG substream, so the
// drawn sequence does not depend on the number of worker threads.
inline constexpr std::size_t kInstancesPerBlock = 1024;

// Source of random RAPG instances for one phase. Keeps references to the graph
// and S_A, which must outlive it.
class InstanceStream {
 public:
  InstanceStream(const DirectedGraph& graph, const NodeSet& seeds_a, std::uint64_t seed, Phase phase,
                 unsigned threads = 1);

  // Appends `count` fresh instances to `pool`.
  void draw_into(RapgPool& pool, std::size_t count);

  // Draws `count` fresh instances and returns the sum of f_R(seeds_b | S_A)
  // without retaining them.
  double draw_and_score(std::size_t count, ModelKind model, const NodeSet& seeds_b);

  std::uint64_t instances_drawn() const { return instances_; }
  std::uint64_t coins() const { return coins_; }

 private:
  template <typename PerBlock>
  void run_blocks(std::size_t count, PerBlock&& per_block);

  const DirectedGraph& graph_;
  const NodeSet& seeds_a_;
  RngStream phase_stream_;
  unsigned threads_;
  std::uint64_t next_block_ = 0;
  std::uint64_t instances_ = 0;
  std::uint64_t coins_ = 0;
};

// ln C(n, k) as sum_{i=1..k} [ln(n - k + i) - ln i].
double log_binomial(std::size_t n, std::size_t k);

// lambda = (8 + 2 eps) n (ell ln n + ln C(n, k) + ln 2) / eps^2.
double lambda_main(std::size_t n, std::size_t k, double ell, double epsilon);

// eps' = 5 (ell eps^2 / (ell + k))^(1/3).
double refine_epsilon(double epsilon, double ell, std::size_t k);

// lambda' = (2 + eps') ell n ln n / eps'^2.
double lambda_refine(std::size_t n, double ell, double epsilon_prime);

struct LowerBoundEstimate {
  double lb = 1.0;
  RapgPool cache;  // every instance drawn, for reuse by refine_lb
  std::size_t rounds = 0;
  std::uint64_t width_clamps = 0;
};

// Adaptive estimate of LB_e = n E[alpha(R)]: round i draws
// c_i = ceil((6 ell ln n + 6 ln log2 n) 2^i) instances and stops at the first
// round whose alpha sum exceeds c_i / 2^i, returning n s_i / (2 c_i);
// otherwise returns 1 after floor(log2 n) - 1 rounds.
LowerBoundEstimate estimate_lb(const DirectedGraph& graph, const NodeSet& seeds_a, ModelKind model,
                               std::size_t k, double ell, InstanceStream& stream);

struct RefinedBound {
  double lb = 0.0;
  double epsilon_prime = 0.0;
  std::uint64_t theta_prime = 0;
  double candidate_spread = 0.0;  // F, the unbiased spread estimate of the candidate set
  std::vector<NodeId> candidate;
};

// Greedy candidate over the cached instances, then LB_r = max(F / (1 + eps'), LB_e*)
// with F measured on ceil(lambda' / LB_e*) fresh instances.
RefinedBound refine_lb(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                       double lb_estimate, const RapgPool& cached, double epsilon, double ell,
                       ModelKind model, InstanceStream& stream);

// Greedy maximization of F_R(S_B) = sum_R f_R(S_B | S_A) with the marginal gain
// vector MG(u) = sum_R Delta_R(u | S_A, S_B). After each pick only instances
// whose score actually changed are revisited.
class GreedySelector {
 public:
  GreedySelector(const RapgPool& pool, const NodeSet& seeds_a, std::size_t node_count,
                 ModelKind model);

  // Picks argmax MG(u) over u outside S_A and S_B (smallest id on ties) and
  // commits it. With update_gains = false the MG vector is left stale, which is
  // enough for the last round.
  NodeId select_next(bool update_gains = true);

  double gain(NodeId u) const { return gains_[u]; }
  std::span<const double> gains() const { return gains_; }
  double coverage() const { return coverage_; }
  const NodeSet& selected() const { return selected_; }
  std::size_t eligible_remaining() const { return eligible_; }

  // Instances containing u (as indices into the pool).
  std::vector<std::uint32_t> instances_containing(NodeId u) const;

 private:
  const RapgPool& pool_;
  const NodeSet& seeds_a_;
  ModelKind model_;
  NodeSet selected_;
  std::size_t eligible_;
  std::vector<ScoreState> states_;
  std::vector<double> gains_;
  double coverage_ = 0.0;
  // Postings: for every node, the (instance, local index) pairs it appears in.
  std::vector<std::uint64_t> post_begin_;
  std::vector<std::uint32_t> post_instance_;
  std::vector<std::uint32_t> post_local_;
  std::vector<std::uint32_t> touched_;
  std::vector<double> old_gains_;
};

struct GreedyOutcome {
  std::vector<NodeId> seeds;  // in selection order
  double coverage = 0.0;      // F_R(S_B | S_A)
};

// Runs k greedy rounds. Throws ContractViolation when fewer than k nodes lie
// outside S_A. An empty pool is allowed; every gain is then 0 and the smallest
// eligible ids are returned.
GreedyOutcome greedy_select(const RapgPool& pool, const NodeSet& seeds_a, std::size_t node_count,
                            std::size_t k, ModelKind model);

struct NodeSelection {
  GreedyOutcome outcome;
  RapgPool instances;
};

NodeSelection node_selection(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                             std::uint64_t theta, ModelKind model, InstanceStream& stream);

struct TcimParams {
  std::size_t k = 1;
  double epsilon = 0.1;
  double ell = 1.0;
  ModelKind model = ModelKind::kCoicm;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct PhaseTimes {
  double estimate_s = 0.0;
  double refine_s = 0.0;
  double select_s = 0.0;
  double total_s = 0.0;
};

struct TcimResult {
  std::vector<NodeId> seeds_b;
  std::uint64_t theta = 0;
  double lb_estimate = 0.0;
  double lb_refined = 0.0;
  double spread_estimate = 0.0;  // n F_R(S_B | S_A) / theta on the node-selection instances
  double ell_prime = 0.0;
  double epsilon_prime = 0.0;
  std::uint64_t theta_prime = 0;
  std::size_t estimate_rounds = 0;
  std::uint64_t width_clamps = 0;
  std::uint64_t instances_generated = 0;
  std::uint64_t coins_total = 0;
  std::size_t peak_memory_bytes = 0;
  PhaseTimes times;
};

// Validates params against the graph and S_A; throws DomainError or
// ContractViolation.
void validate(const DirectedGraph& graph, const NodeSet& seeds_a, const TcimParams& params);

// Two-phase competitive influence maximization with ell' = ell + ln 3 / ln n.
TcimResult tcim(const DirectedGraph& graph, const NodeSet& seeds_a, const TcimParams& params);

}  // namespace tcim
