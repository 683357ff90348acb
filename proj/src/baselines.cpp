#include "tcim/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <queue>
#include <thread>

#include "tcim/engine.hpp"
#include "tcim/error.hpp"
#include "tcim/model.hpp"

namespace tcim {

namespace {

using Clock = std::chrono::steady_clock;

double tie_tolerance(double best) { return kGainTieTolerance * std::max(1.0, std::abs(best)); }

std::vector<NodeId> eligible_nodes(const DirectedGraph& graph, const NodeSet& seeds_a) {
  std::vector<NodeId> out;
  for (std::size_t u = 0; u < graph.node_count(); ++u) {
    if (!seeds_a.contains(static_cast<NodeId>(u))) out.push_back(static_cast<NodeId>(u));
  }
  return out;
}

void check_budget(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k) {
  for (NodeId u : seeds_a) {
    if (u >= graph.node_count()) throw DomainError("S_A member outside the graph");
  }
  if (k > graph.node_count() - seeds_a.size()) {
    throw ContractViolation("k exceeds |V \\ S_A|");
  }
}

NodeSet with(const NodeSet& base, NodeId u) {
  NodeSet out(base.universe(), base.members());
  out.insert(u);
  return out;
}

struct CelfEntry {
  double gain;
  NodeId id;
  std::size_t round;  // |S_B| when gain was computed
  double gain_after_best = 0.0;  // gain of id given S_B + best_then
  NodeId best_then = kInvalidNode;
};

struct WorseEntry {
  bool operator()(const CelfEntry& a, const CelfEntry& b) const {
    return a.gain < b.gain || (a.gain == b.gain && a.id > b.id);
  }
};

// With S_A empty every model reduces to plain independent cascade, so one
// world's marginal gain of u is the number of nodes u reaches that S_B does
// not. Propagating S_B first flips every arc out of its reach; the search from
// u stops at reached nodes, so it only flips arcs not drawn yet.
class CascadeMarginal {
 public:
  explicit CascadeMarginal(const DirectedGraph& graph) : graph_(graph), stamp_(graph.node_count(), 0) {}

  double simulate(const NodeSet& seeds_b, NodeId u, RngStream& rng) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    queue_.clear();
    head_ = 0;
    for (NodeId s : seeds_b) visit(s);
    spread(rng);
    if (stamp_[u] == epoch_) return 0.0;
    const std::size_t before = queue_.size();
    visit(u);
    spread(rng);
    return static_cast<double>(queue_.size() - before);
  }

 private:
  void visit(NodeId v) {
    stamp_[v] = epoch_;
    queue_.push_back(v);
  }

  void spread(RngStream& rng) {
    for (; head_ < queue_.size(); ++head_) {
      const NodeId v = queue_[head_];
      const auto targets = graph_.out_neighbors(v);
      const auto probs = graph_.out_probs(v);
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (stamp_[targets[i]] != epoch_ && rng.coin(probs[i])) visit(targets[i]);
      }
    }
  }

  const DirectedGraph& graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> queue_;
  std::size_t head_ = 0;
};

// Runs `sim(state, rng)` num_sims times in blocks of kInstancesPerBlock,
// block b on substream b of (seed, stream), and returns the mean.
template <typename MakeState, typename Sim>
double block_mean(std::uint64_t num_sims, std::uint64_t seed, std::uint64_t stream, unsigned threads,
                  MakeState make_state, Sim sim) {
  const std::uint64_t blocks = (num_sims + kInstancesPerBlock - 1) / kInstancesPerBlock;
  std::vector<double> sums(blocks, 0.0);
  const RngStream base(seed, stream);
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    auto state = make_state();
    for (std::uint64_t b = first; b < blocks; b += stride) {
      RngStream rng = base.substream(b);
      const std::uint64_t n = std::min<std::uint64_t>(kInstancesPerBlock, num_sims - b * kInstancesPerBlock);
      for (std::uint64_t i = 0; i < n; ++i) sums[b] += sim(state, rng);
    }
  };
  const std::uint64_t workers = std::min<std::uint64_t>(std::max(1u, threads), blocks);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  double total = 0.0;
  for (double s : sums) total += s;
  return total / static_cast<double>(num_sims);
}

}  // namespace

double estimate_sigma_mc(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                         const NodeSet& seeds_b, std::uint64_t num_sims, std::uint64_t seed,
                         unsigned threads, std::uint64_t stream) {
  if (num_sims < 1) throw DomainError("num_sims must be at least 1");
  ForwardPropagator probe(graph, seeds_a, seeds_b);  // validates the seed sets
  if (seeds_b.empty()) return 0.0;
  return block_mean(
      num_sims, seed, stream, threads, [&] { return ForwardPropagator(graph, seeds_a, seeds_b); },
      [&](ForwardPropagator& p, RngStream& rng) { return p.simulate(model, rng); });
}

double estimate_marginal_mc(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                            const NodeSet& seeds_b, NodeId u, std::uint64_t num_sims,
                            std::uint64_t seed, unsigned threads, std::uint64_t stream) {
  if (num_sims < 1) throw DomainError("num_sims must be at least 1");
  if (seeds_b.contains(u)) throw ContractViolation("u is already in S_B");
  const NodeSet plus = with(seeds_b, u);
  ForwardPropagator probe(graph, seeds_a, plus);  // validates the seed sets
  if (seeds_a.empty()) {
    return block_mean(
        num_sims, seed, stream, threads, [&] { return CascadeMarginal(graph); },
        [&](CascadeMarginal& c, RngStream& rng) { return c.simulate(seeds_b, u, rng); });
  }
  struct State {
    ForwardPropagator base, plus;
    SharedWorld world;
  };
  return block_mean(
      num_sims, seed, stream, threads,
      [&] {
        return State{ForwardPropagator(graph, seeds_a, seeds_b), ForwardPropagator(graph, seeds_a, plus),
                     SharedWorld(graph)};
      },
      [&](State& st, RngStream& rng) {
        st.world.reset();
        const double with_u = st.plus.simulate(model, rng, st.world);
        const double without = seeds_b.empty() ? 0.0 : st.base.simulate(model, rng, st.world);
        return with_u - without;
      });
}

std::uint64_t greedymc_min_r(std::size_t n, std::size_t k, double ell, double epsilon,
                             double opt_lower) {
  if (n < 1 || k < 1) throw DomainError("greedymc_min_r needs n >= 1 and k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(ell > 0.0)) throw DomainError("ell must be positive");
  if (!(opt_lower >= 1.0)) throw DomainError("opt_lower must be at least 1");
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double r = (8.0 * kk * kk + 2.0 * kk * epsilon) * nn *
                   ((ell + 1.0) * std::log(nn) + std::log(kk)) / (epsilon * epsilon * opt_lower);
  return static_cast<std::uint64_t>(std::ceil(r));
}

SpreadEvaluator mc_evaluator(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                             std::uint64_t r, std::uint64_t seed, unsigned threads) {
  if (r < 1) throw DomainError("r must be at least 1");
  auto calls = std::make_shared<std::uint64_t>(0);
  SpreadEvaluator out;
  out.sims_per_call = r;
  out.marginal = [model, &graph, &seeds_a, r, seed, threads, calls](const NodeSet& seeds_b, NodeId u) {
    const std::uint64_t stream = 4 + (*calls)++;
    return estimate_marginal_mc(model, graph, seeds_a, seeds_b, u, r, seed, threads, stream);
  };
  return out;
}

SpreadEvaluator exact_evaluator(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a) {
  SpreadEvaluator out;
  out.marginal = [model, &graph, &seeds_a](const NodeSet& seeds_b, NodeId u) {
    return exact_sigma(model, graph, seeds_a, with(seeds_b, u)) -
           exact_sigma(model, graph, seeds_a, seeds_b);
  };
  return out;
}

BaselineResult greedy_mc(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                         const SpreadEvaluator& evaluator) {
  check_budget(graph, seeds_a, k);
  const auto start = Clock::now();
  BaselineResult out;
  NodeSet chosen(graph.node_count());
  double sigma = 0.0;
  const std::vector<NodeId> eligible = eligible_nodes(graph, seeds_a);
  std::vector<double> gains(eligible.size());
  for (std::size_t round = 0; round < k; ++round) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      const NodeId u = eligible[i];
      if (chosen.contains(u)) continue;
      gains[i] = evaluator.marginal(chosen, u);
      ++out.evaluations;
      best = std::max(best, gains[i]);
    }
    const double floor = best - tie_tolerance(best);
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      const NodeId u = eligible[i];
      if (chosen.contains(u) || gains[i] < floor) continue;
      chosen.insert(u);
      out.seeds_b.push_back(u);
      sigma += gains[i];
      break;
    }
  }
  out.spread_estimate = sigma;
  out.simulations_used = out.evaluations * evaluator.sims_per_call;
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

BaselineResult celf(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                    const SpreadEvaluator& evaluator, bool plus_plus) {
  check_budget(graph, seeds_a, k);
  const auto start = Clock::now();
  BaselineResult out;
  NodeSet chosen(graph.node_count());
  double sigma = 0.0;
  NodeId last_pick = kInvalidNode;
  // Best fresh node of the current round and its gain.
  NodeId round_best = kInvalidNode;
  double round_best_gain = 0.0;

  auto eval = [&](const NodeSet& s, NodeId u) {
    ++out.evaluations;
    return evaluator.marginal(s, u);
  };

  auto refresh = [&](CelfEntry& e) {
    const std::size_t round = chosen.size();
    if (e.round == round) return;
    if (plus_plus && last_pick != kInvalidNode && e.round + 1 == round && e.best_then == last_pick) {
      e.gain = e.gain_after_best;
    } else {
      e.gain = eval(chosen, e.id);
      e.best_then = kInvalidNode;
      if (plus_plus && round_best != kInvalidNode) {
        e.gain_after_best = eval(with(chosen, round_best), e.id);
        e.best_then = round_best;
      }
    }
    e.round = round;
    if (round_best == kInvalidNode || e.gain > round_best_gain ||
        (e.gain == round_best_gain && e.id < round_best)) {
      round_best = e.id;
      round_best_gain = e.gain;
    }
  };

  std::priority_queue<CelfEntry, std::vector<CelfEntry>, WorseEntry> heap;
  for (NodeId u : eligible_nodes(graph, seeds_a)) {
    CelfEntry e{0.0, u, std::numeric_limits<std::size_t>::max()};
    refresh(e);
    heap.push(e);
  }

  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t round = chosen.size();
    if (r > 0) {
      round_best = kInvalidNode;
      round_best_gain = 0.0;
    }
    while (heap.top().round != round) {
      CelfEntry e = heap.top();
      heap.pop();
      refresh(e);
      heap.push(e);
    }
    // The top is fresh; every entry within the tie tolerance is refreshed so
    // the smallest id among near-equal gains wins, as in plain greedy.
    std::vector<CelfEntry> group{heap.top()};
    heap.pop();
    double best = group.front().gain;
    while (!heap.empty() && heap.top().gain >= best - tie_tolerance(best)) {
      CelfEntry e = heap.top();
      heap.pop();
      refresh(e);
      best = std::max(best, e.gain);
      group.push_back(e);
    }
    const double floor = best - tie_tolerance(best);
    std::size_t pick = group.size();
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (group[i].gain >= floor && (pick == group.size() || group[i].id < group[pick].id)) pick = i;
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i != pick) heap.push(group[i]);
    }
    const CelfEntry& winner = group[pick];
    chosen.insert(winner.id);
    out.seeds_b.push_back(winner.id);
    sigma += winner.gain;
    last_pick = winner.id;
  }
  out.spread_estimate = sigma;
  out.simulations_used = out.evaluations * evaluator.sims_per_call;
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

BaselineResult single_discount(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k) {
  check_budget(graph, seeds_a, k);
  const auto start = Clock::now();
  const std::size_t n = graph.node_count();
  NodeSet taken(n, seeds_a.members());
  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : graph.out_neighbors(static_cast<NodeId>(u))) {
      if (!taken.contains(v)) ++degree[u];
    }
  }
  BaselineResult out;
  for (std::size_t r = 0; r < k; ++r) {
    NodeId best = kInvalidNode;
    for (std::size_t u = 0; u < n; ++u) {
      const auto id = static_cast<NodeId>(u);
      if (taken.contains(id)) continue;
      if (best == kInvalidNode || degree[u] > degree[best]) best = id;
    }
    taken.insert(best);
    out.seeds_b.push_back(best);
    for (NodeId w : graph.in_neighbors(best)) --degree[w];
  }
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

OptimumResult exhaustive_opt(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                             std::size_t k) {
  if (k < 1) throw DomainError("k must be at least 1");
  check_budget(graph, seeds_a, k);
  const std::vector<NodeId> eligible = eligible_nodes(graph, seeds_a);
  const std::size_t e = eligible.size();
  const double subsets = std::exp(log_binomial(e, k));
  if (subsets > static_cast<double>(kExhaustiveMaxSubsets) + 0.5) {
    throw LimitExceeded("too many candidate subsets for exhaustive search");
  }

  OptimumResult out;
  out.value = -1.0;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    NodeSet s(graph.node_count());
    for (std::size_t i : idx) s.insert(eligible[i]);
    const double v = exact_sigma(model, graph, seeds_a, s);
    if (v > out.value) {
      out.value = v;
      out.seeds_b = s.sorted();
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == e - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace tcim
