#include "tcim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "tcim/error.hpp"

namespace tcim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t ceil_to_count(double x) {
  if (!(x < 1.8e19)) throw LimitExceeded("sample count overflows 64 bits");
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_ell_epsilon(double ell, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(ell >= 0.5)) throw DomainError("ell must be at least 0.5");
}

}  // namespace

InstanceStream::InstanceStream(const DirectedGraph& graph, const NodeSet& seeds_a, std::uint64_t seed,
                               Phase phase, unsigned threads)
    : graph_(graph),
      seeds_a_(seeds_a),
      phase_stream_(seed, static_cast<std::uint64_t>(phase)),
      threads_(std::max(1u, threads)) {}

// Calls per_block(slot, rng, sampler, count) for every block of this batch.
// Blocks are dealt to workers round-robin; each worker owns one sampler.
template <typename PerBlock>
void InstanceStream::run_blocks(std::size_t count, PerBlock&& per_block) {
  const std::size_t blocks = (count + kInstancesPerBlock - 1) / kInstancesPerBlock;
  const std::uint64_t first = next_block_;
  next_block_ += blocks;
  instances_ += count;
  auto work = [&](std::size_t worker, std::size_t stride) {
    RapgSampler sampler(graph_, seeds_a_);
    for (std::size_t b = worker; b < blocks; b += stride) {
      RngStream rng = phase_stream_.substream(first + b);
      const std::size_t n = std::min(kInstancesPerBlock, count - b * kInstancesPerBlock);
      per_block(b, rng, sampler, n);
    }
  };
  const std::size_t workers = std::min<std::size_t>(threads_, blocks);
  if (workers <= 1) {
    if (blocks > 0) work(0, 1);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
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

void InstanceStream::draw_into(RapgPool& pool, std::size_t count) {
  // Bounded batches keep the per-block staging pools small.
  const std::size_t batch = kInstancesPerBlock * threads_ * 4;
  for (std::size_t done = 0; done < count;) {
    const std::size_t now = std::min(batch, count - done);
    const std::size_t blocks = (now + kInstancesPerBlock - 1) / kInstancesPerBlock;
    std::vector<RapgPool> staged(blocks, RapgPool(pool.level()));
    std::vector<std::uint64_t> coins(blocks, 0);
    run_blocks(now, [&](std::size_t b, RngStream& rng, RapgSampler& sampler, std::size_t n) {
      RapgInstance instance;
      for (std::size_t i = 0; i < n; ++i) {
        sampler.sample(rng, instance);
        coins[b] += instance.coin_count;
        staged[b].append(instance);
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      coins_ += coins[b];
      pool.append(std::move(staged[b]));
    }
    done += now;
  }
}

double InstanceStream::draw_and_score(std::size_t count, ModelKind model, const NodeSet& seeds_b) {
  const std::size_t blocks = (count + kInstancesPerBlock - 1) / kInstancesPerBlock;
  std::vector<double> sums(blocks, 0.0);
  std::vector<std::uint64_t> coins(blocks, 0);
  run_blocks(count, [&](std::size_t b, RngStream& rng, RapgSampler& sampler, std::size_t n) {
    RapgInstance instance;
    for (std::size_t i = 0; i < n; ++i) {
      sampler.sample(rng, instance);
      coins[b] += instance.coin_count;
      sums[b] += score(model, instance.view(), seeds_a_, seeds_b);
    }
  });
  double total = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total += sums[b];
    coins_ += coins[b];
  }
  return total;
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw DomainError("log_binomial needs k <= n");
  double s = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    s += std::log(static_cast<double>(n - k + i)) - std::log(static_cast<double>(i));
  }
  return s;
}

double lambda_main(std::size_t n, std::size_t k, double ell, double epsilon) {
  if (k < 1 || k > n) throw DomainError("lambda_main needs 1 <= k <= n");
  check_ell_epsilon(ell, epsilon);
  const double nn = static_cast<double>(n);
  return (8.0 + 2.0 * epsilon) * nn *
         (ell * std::log(nn) + log_binomial(n, k) + std::log(2.0)) / (epsilon * epsilon);
}

double refine_epsilon(double epsilon, double ell, std::size_t k) {
  return 5.0 * std::cbrt(ell * epsilon * epsilon / (ell + static_cast<double>(k)));
}

double lambda_refine(std::size_t n, double ell, double epsilon_prime) {
  const double nn = static_cast<double>(n);
  return (2.0 + epsilon_prime) * ell * nn * std::log(nn) / (epsilon_prime * epsilon_prime);
}

LowerBoundEstimate estimate_lb(const DirectedGraph& graph, const NodeSet& seeds_a, ModelKind model,
                               std::size_t k, double ell, InstanceStream& stream) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw DomainError("estimate_lb needs at least 2 nodes");
  LowerBoundEstimate out;
  out.cache = RapgPool(required_storage(model));
  const std::size_t m_prime = restricted_edge_count(graph, seeds_a);
  const double nn = static_cast<double>(n);
  const double log2n = std::log2(nn);
  const auto last = static_cast<long>(std::floor(log2n)) - 1;
  const double base = 6.0 * ell * std::log(nn) + 6.0 * std::log(log2n);
  for (long i = 1; i <= last; ++i) {
    const double scale = std::ldexp(1.0, static_cast<int>(i));
    const std::uint64_t c = ceil_to_count(base * scale);
    const std::size_t begin = out.cache.size();
    stream.draw_into(out.cache, c);
    double s = 0.0;
    for (std::size_t j = begin; j < out.cache.size(); ++j) {
      const std::size_t w = rapg_width(out.cache[j], graph, model, seeds_a);
      if (w > m_prime) ++out.width_clamps;
      s += alpha(w, m_prime, k);
    }
    out.rounds = static_cast<std::size_t>(i);
    if (s > static_cast<double>(c) / scale) {
      out.lb = nn * s / (2.0 * static_cast<double>(c));
      return out;
    }
  }
  out.lb = 1.0;
  return out;
}

RefinedBound refine_lb(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                       double lb_estimate, const RapgPool& cached, double epsilon, double ell,
                       ModelKind model, InstanceStream& stream) {
  if (!(lb_estimate >= 1.0)) throw DomainError("refine_lb needs lb_estimate >= 1");
  const std::size_t n = graph.node_count();
  RefinedBound out;
  out.candidate = greedy_select(cached, seeds_a, n, k, model).seeds;
  out.epsilon_prime = refine_epsilon(epsilon, ell, k);
  out.theta_prime = ceil_to_count(lambda_refine(n, ell, out.epsilon_prime) / lb_estimate);
  const NodeSet candidate(n, out.candidate);
  const double sum = stream.draw_and_score(out.theta_prime, model, candidate);
  out.candidate_spread = static_cast<double>(n) * sum / static_cast<double>(out.theta_prime);
  out.lb = std::max(out.candidate_spread / (1.0 + out.epsilon_prime), lb_estimate);
  return out;
}

GreedySelector::GreedySelector(const RapgPool& pool, const NodeSet& seeds_a, std::size_t node_count,
                               ModelKind model)
    : pool_(pool), seeds_a_(seeds_a), model_(model), selected_(node_count), gains_(node_count, 0.0) {
  if (pool.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw LimitExceeded("too many instances for the greedy selector");
  }
  eligible_ = node_count;
  for (NodeId u : seeds_a) {
    if (u < node_count) --eligible_;
  }

  post_begin_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (NodeId u : pool[i].nodes) {
      if (!seeds_a.contains(u)) ++post_begin_[u + 1];
    }
  }
  for (std::size_t u = 0; u < node_count; ++u) post_begin_[u + 1] += post_begin_[u];
  post_instance_.resize(post_begin_[node_count]);
  post_local_.resize(post_begin_[node_count]);
  std::vector<std::uint64_t> fill(post_begin_.begin(), post_begin_.end() - 1);

  states_.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const RapgView view = pool[i];
    states_.push_back(init_state(model, view, seeds_a));
    for (std::size_t j = 0; j < view.size(); ++j) {
      const NodeId u = view.nodes[j];
      if (seeds_a.contains(u)) continue;
      const std::uint64_t slot = fill[u]++;
      post_instance_[slot] = static_cast<std::uint32_t>(i);
      post_local_[slot] = static_cast<std::uint32_t>(j);
      gains_[u] += marginal_gain_at(model, view, states_[i], seeds_a, selected_, j);
    }
  }
}

std::vector<std::uint32_t> GreedySelector::instances_containing(NodeId u) const {
  return {post_instance_.begin() + static_cast<std::ptrdiff_t>(post_begin_[u]),
          post_instance_.begin() + static_cast<std::ptrdiff_t>(post_begin_[u + 1])};
}

NodeId GreedySelector::select_next(bool update_gains) {
  if (eligible_ == 0) throw ContractViolation("no eligible node left outside S_A and S_B");
  NodeId best = kInvalidNode;
  double best_gain = -1.0;
  for (std::size_t u = 0; u < gains_.size(); ++u) {
    const auto id = static_cast<NodeId>(u);
    if (seeds_a_.contains(id) || selected_.contains(id)) continue;
    if (gains_[u] > best_gain) {
      best_gain = gains_[u];
      best = id;
    }
  }
  const NodeId v = best;

  // Pass 1, before v joins S_B: Delta_R(v) on every instance holding v, and
  // for the instances it changes, the current gains of their other members.
  touched_.clear();
  old_gains_.clear();
  std::vector<std::uint32_t> v_local;
  for (std::uint64_t p = post_begin_[v]; p < post_begin_[v + 1]; ++p) {
    const std::uint32_t i = post_instance_[p];
    const RapgView view = pool_[i];
    const double g = marginal_gain_at(model_, view, states_[i], seeds_a_, selected_, post_local_[p]);
    if (g <= 0.0) continue;
    coverage_ += g;
    touched_.push_back(i);
    v_local.push_back(post_local_[p]);
    if (!update_gains) continue;
    for (std::size_t j = 0; j < view.size(); ++j) {
      const NodeId w = view.nodes[j];
      const bool counted = w != v && !seeds_a_.contains(w) && !selected_.contains(w);
      old_gains_.push_back(counted ? marginal_gain_at(model_, view, states_[i], seeds_a_, selected_, j)
                                   : 0.0);
    }
  }

  selected_.insert(v);
  --eligible_;

  // Pass 2: commit v and move every member's MG by (new - old).
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < touched_.size(); ++t) {
    const std::uint32_t i = touched_[t];
    const RapgView view = pool_[i];
    states_[i] = commit_at(model_, view, states_[i], seeds_a_, selected_, v_local[t]);
    if (!update_gains) continue;
    for (std::size_t j = 0; j < view.size(); ++j, ++cursor) {
      const NodeId w = view.nodes[j];
      if (seeds_a_.contains(w) || selected_.contains(w)) continue;
      const double now = marginal_gain_at(model_, view, states_[i], seeds_a_, selected_, j);
      gains_[w] += now - old_gains_[cursor];
    }
  }
  gains_[v] = 0.0;
  return v;
}

GreedyOutcome greedy_select(const RapgPool& pool, const NodeSet& seeds_a, std::size_t node_count,
                            std::size_t k, ModelKind model) {
  GreedySelector selector(pool, seeds_a, node_count, model);
  if (k > selector.eligible_remaining()) {
    throw ContractViolation("k exceeds the number of nodes outside S_A");
  }
  GreedyOutcome out;
  for (std::size_t r = 0; r < k; ++r) out.seeds.push_back(selector.select_next(r + 1 < k));
  out.coverage = selector.coverage();
  return out;
}

NodeSelection node_selection(const DirectedGraph& graph, const NodeSet& seeds_a, std::size_t k,
                             std::uint64_t theta, ModelKind model, InstanceStream& stream) {
  if (theta < 1) throw DomainError("theta must be at least 1");
  NodeSelection out{{}, RapgPool(required_storage(model))};
  stream.draw_into(out.instances, theta);
  out.outcome = greedy_select(out.instances, seeds_a, graph.node_count(), k, model);
  return out;
}

void validate(const DirectedGraph& graph, const NodeSet& seeds_a, const TcimParams& params) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw DomainError("TCIM needs at least 2 nodes");
  check_ell_epsilon(params.ell, params.epsilon);
  if (params.k < 1) throw DomainError("k must be at least 1");
  for (NodeId u : seeds_a) {
    if (u >= n) throw DomainError("S_A member outside the graph");
  }
  if (params.k > n - seeds_a.size()) {
    throw ContractViolation("k exceeds |V \\ S_A|");
  }
  if (!graph.probabilities_assigned()) {
    throw ContractViolation("edge probabilities are not assigned");
  }
}

TcimResult tcim(const DirectedGraph& graph, const NodeSet& seeds_a, const TcimParams& params) {
  validate(graph, seeds_a, params);
  const auto start = Clock::now();
  const std::size_t n = graph.node_count();
  TcimResult out;
  out.ell_prime = params.ell + std::log(3.0) / std::log(static_cast<double>(n));

  auto t = Clock::now();
  InstanceStream estimate_stream(graph, seeds_a, params.seed, Phase::kEstimate, params.threads);
  LowerBoundEstimate est =
      estimate_lb(graph, seeds_a, params.model, params.k, out.ell_prime, estimate_stream);
  out.lb_estimate = est.lb;
  out.estimate_rounds = est.rounds;
  out.width_clamps = est.width_clamps;
  out.peak_memory_bytes = est.cache.memory_bytes();
  out.times.estimate_s = seconds_since(t);

  t = Clock::now();
  InstanceStream refine_stream(graph, seeds_a, params.seed, Phase::kRefine, params.threads);
  RefinedBound ref = refine_lb(graph, seeds_a, params.k, est.lb, est.cache, params.epsilon,
                               out.ell_prime, params.model, refine_stream);
  est.cache.clear();
  out.lb_refined = ref.lb;
  out.epsilon_prime = ref.epsilon_prime;
  out.theta_prime = ref.theta_prime;
  out.times.refine_s = seconds_since(t);

  t = Clock::now();
  const double lambda = lambda_main(n, params.k, out.ell_prime, params.epsilon);
  out.theta = ceil_to_count(lambda / out.lb_refined);
  if (out.theta > std::numeric_limits<std::uint32_t>::max()) {
    throw LimitExceeded("theta exceeds the supported instance count");
  }
  InstanceStream select_stream(graph, seeds_a, params.seed, Phase::kSelect, params.threads);
  NodeSelection sel =
      node_selection(graph, seeds_a, params.k, out.theta, params.model, select_stream);
  out.seeds_b = std::move(sel.outcome.seeds);
  out.spread_estimate =
      static_cast<double>(n) * sel.outcome.coverage / static_cast<double>(out.theta);
  out.peak_memory_bytes = std::max(out.peak_memory_bytes, sel.instances.memory_bytes());
  out.times.select_s = seconds_since(t);

  out.instances_generated = estimate_stream.instances_drawn() + refine_stream.instances_drawn() +
                            select_stream.instances_drawn();
  out.coins_total = estimate_stream.coins() + refine_stream.coins() + select_stream.coins();
  out.times.total_s = seconds_since(start);
  return out;
}

}  // namespace tcim
