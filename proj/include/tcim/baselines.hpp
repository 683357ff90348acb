#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tcim/graph.hpp"
#include "tcim/model_kind.hpp"

namespace tcim {

struct BaselineResult {
  std::vector<NodeId> seeds_b;  // in selection order
  double spread_estimate = 0.0; // evaluator value of the returned set (0 for SingleDiscount)
  std::uint64_t evaluations = 0;
  std::uint64_t simulations_used = 0;
  double wall_time_s = 0.0;
};

// Monte-Carlo estimate of sigma(S_B | S_A): the mean of num_sims forward
// simulations. Simulations are drawn in blocks of kInstancesPerBlock, each
// block on its own substream of (seed, stream), so the value does not depend
// on the thread count.
double estimate_sigma_mc(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                         const NodeSet& seeds_b, std::uint64_t num_sims, std::uint64_t seed,
                         unsigned threads = 1, std::uint64_t stream = 3);

// Monte-Carlo estimate of sigma(S_B + u | S_A) - sigma(S_B | S_A). Both sets
// are propagated on the same live-edge world in every simulation, which keeps
// the variance of the difference far below that of two separate estimates.
// Blocks and substreams as in estimate_sigma_mc.
double estimate_marginal_mc(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                            const NodeSet& seeds_b, NodeId u, std::uint64_t num_sims,
                            std::uint64_t seed, unsigned threads = 1, std::uint64_t stream = 3);

// Smallest r with r >= (8k^2 + 2k eps) n ((ell + 1) ln n + ln k) / (eps^2 opt_lower).
std::uint64_t greedymc_min_r(std::size_t n, std::size_t k, double ell, double epsilon,
                             double opt_lower);

// Marginal-gain oracle used by the greedy baselines: marginal(S_B, u)
// estimates sigma(S_B + u) - sigma(S_B). Each call may draw fresh randomness;
// `sims_per_call` is 0 for exact evaluators.
struct SpreadEvaluator {
  std::function<double(const NodeSet& seeds_b, NodeId u)> marginal;
  std::uint64_t sims_per_call = 0;
};

// estimate_marginal_mc with r simulations per call; call i uses RNG stream
// 4 + i, so every evaluation draws fresh worlds while the whole run stays
// reproducible.
SpreadEvaluator mc_evaluator(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                             std::uint64_t r, std::uint64_t seed, unsigned threads = 1);

// Noise-free evaluator: difference of two exact_sigma values.
SpreadEvaluator exact_evaluator(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a);

// Relative tolerance under which two marginal gains count as tied; ties go to
// the smallest node id.
inline constexpr double kGainTieTolerance = 1e-9;

// Plain greedy: every round evaluates the marginal gain of every eligible u.
// spread_estimate is the sum of the winners' gains.
BaselineResult greedy_mc(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                         const SpreadEvaluator& evaluator);

// Lazy-forward greedy. With plus_plus, each evaluation also records the gain
// of u given S_B + best for the best node seen so far in the round, which is
// reused when that node is the next pick.
BaselineResult celf(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                    const SpreadEvaluator& evaluator, bool plus_plus = false);

// k rounds picking the node with the most out-arcs into V \ (S_A + S_B).
BaselineResult single_discount(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k);

struct OptimumResult {
  std::vector<NodeId> seeds_b;  // ascending
  double value = 0.0;
};

// Global optimum over all k-subsets of V \ S_A using exact_sigma; the first
// subset in lexicographic order wins ties. Refuses more than
// kExhaustiveMaxSubsets subsets.
inline constexpr std::uint64_t kExhaustiveMaxSubsets = 100000;
OptimumResult exhaustive_opt(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                             std::size_t k);

}  // namespace tcim
