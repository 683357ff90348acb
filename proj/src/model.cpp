#include "tcim/model.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tcim/error.hpp"

namespace tcim {

std::string_view model_name(ModelKind model) {
  switch (model) {
    case ModelKind::kCoicm:
      return "coicm";
    case ModelKind::kDistance:
      return "distance";
    case ModelKind::kWave:
      return "wave";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind m : kAllModels) {
    if (model_name(m) == name) return m;
  }
  throw DomainError("unknown model `" + std::string(name) + "` (expected coicm, distance or wave)");
}

StorageLevel required_storage(ModelKind model) {
  switch (model) {
    case ModelKind::kCoicm:
      return StorageLevel::kNodes;
    case ModelKind::kDistance:
      return StorageLevel::kNodesAndDist;
    case ModelKind::kWave:
      return StorageLevel::kFull;
  }
  return StorageLevel::kFull;
}

namespace {

void require_disjoint(const NodeSet& seeds_a, const NodeSet& seeds_b) {
  if (!disjoint(seeds_a, seeds_b)) throw ContractViolation("S_A and S_B must be disjoint");
}

void require_layout(ModelKind model, const RapgView& instance) {
  if (model != ModelKind::kCoicm && instance.dist.size() != instance.size()) {
    throw ContractViolation("instance storage lacks hop distances required by the model");
  }
  if (model == ModelKind::kWave && instance.pred_end.size() != instance.size()) {
    throw ContractViolation("instance storage lacks shortest-path edges required by the Wave model");
  }
}

// Wave: p(root) with committed S_B plus the optional extra B seed at `extra`.
// Seeds at the nearest seed layer d* are fixed to 1 (B) or 0 (A); every node
// closer to the root averages the values of its predecessors that are reached
// from that layer.
double wave_root_probability(const RapgView& r, const NodeSet& seeds_a, const NodeSet& seeds_b,
                             std::size_t extra) {
  thread_local std::vector<double> p;
  thread_local std::vector<char> state;  // 1 when reached from the nearest seed layer
  const std::size_t size = r.size();

  std::uint32_t nearest = r.d_a;
  for (std::size_t i = 0; i < size && r.dist[i] < nearest; ++i) {
    if (i == extra || seeds_b.contains(r.nodes[i])) nearest = r.dist[i];
  }
  if (nearest == kUnreachable) return 0.0;

  p.assign(size, 0.0);
  state.assign(size, 0);
  for (std::size_t i = size; i-- > 0;) {
    const std::uint32_t d = r.dist[i];
    if (d > nearest) continue;
    if (d == nearest) {
      if (i == extra || seeds_b.contains(r.nodes[i])) {
        p[i] = 1.0;
        state[i] = 1;
      } else if (seeds_a.contains(r.nodes[i])) {
        state[i] = 1;
      }
      continue;
    }
    double sum = 0.0;
    std::uint32_t count = 0;
    for (std::uint32_t s : r.predecessors(i)) {
      if (state[s]) {
        sum += p[s];
        ++count;
      }
    }
    if (count > 0) {
      p[i] = sum / count;
      state[i] = 1;
    }
  }
  return state[0] ? p[0] : 0.0;
}

double distance_ratio(std::uint32_t n_a, std::uint32_t n_b) {
  const std::uint32_t total = n_a + n_b;
  return total == 0 ? 0.0 : static_cast<double>(n_b) / static_cast<double>(total);
}

}  // namespace

double score(ModelKind model, const RapgView& instance, const NodeSet& seeds_a,
             const NodeSet& seeds_b) {
  require_disjoint(seeds_a, seeds_b);
  require_layout(model, instance);
  switch (model) {
    case ModelKind::kCoicm:
      for (NodeId u : instance.nodes) {
        if (seeds_b.contains(u)) return 1.0;
      }
      return 0.0;
    case ModelKind::kDistance: {
      std::uint32_t nearest_b = kUnreachable;
      std::uint32_t n_a = 0;
      std::uint32_t n_b = 0;
      for (std::size_t i = 0; i < instance.size(); ++i) {
        const NodeId u = instance.nodes[i];
        if (seeds_b.contains(u)) {
          nearest_b = std::min(nearest_b, instance.dist[i]);
          if (instance.dist[i] == instance.d_a) ++n_b;
        } else if (seeds_a.contains(u) && instance.dist[i] == instance.d_a) {
          ++n_a;
        }
      }
      if (nearest_b == kUnreachable) return 0.0;
      if (nearest_b < instance.d_a) return 1.0;
      return distance_ratio(n_a, n_b);
    }
    case ModelKind::kWave:
      return wave_root_probability(instance, seeds_a, seeds_b, instance.size());
  }
  return 0.0;
}

ScoreState init_state(ModelKind model, const RapgView& instance, const NodeSet& seeds_a) {
  require_layout(model, instance);
  ScoreState state;
  if (model == ModelKind::kDistance && instance.a_reached()) {
    // S_A members of an instance all sit at distance d_a, at its tail.
    for (std::size_t i = instance.size(); i-- > 0 && instance.dist[i] == instance.d_a;) {
      if (seeds_a.contains(instance.nodes[i])) ++state.n_a;
    }
  }
  return state;
}

double marginal_gain_at(ModelKind model, const RapgView& instance, const ScoreState& state,
                        const NodeSet& seeds_a, const NodeSet& seeds_b, std::size_t local) {
  if (state.covered) return 0.0;
  switch (model) {
    case ModelKind::kCoicm:
      return 1.0;
    case ModelKind::kDistance:
      if (instance.dist[local] < instance.d_a) return 1.0 - state.score;
      return distance_ratio(state.n_a, state.n_b + 1) - state.score;
    case ModelKind::kWave:
      return wave_root_probability(instance, seeds_a, seeds_b, local) - state.score;
  }
  return 0.0;
}

ScoreState commit_at(ModelKind model, const RapgView& instance, const ScoreState& state,
                     const NodeSet& seeds_a, const NodeSet& seeds_b, std::size_t local) {
  ScoreState next = state;
  if (state.covered) return next;
  switch (model) {
    case ModelKind::kCoicm:
      next.covered = true;
      next.score = 1.0;
      break;
    case ModelKind::kDistance:
      if (instance.dist[local] < instance.d_a) {
        next.covered = true;
        next.score = 1.0;
      } else {
        ++next.n_b;
        next.score = distance_ratio(next.n_a, next.n_b);
      }
      break;
    case ModelKind::kWave:
      next.score = wave_root_probability(instance, seeds_a, seeds_b, local);
      next.covered = next.score >= 1.0;
      break;
  }
  return next;
}

namespace {

std::size_t checked_local(const RapgView& instance, const NodeSet& seeds_a, const NodeSet& seeds_b,
                          NodeId u) {
  if (seeds_a.contains(u)) throw ContractViolation("node " + std::to_string(u) + " is in S_A");
  if (seeds_b.contains(u)) throw ContractViolation("node " + std::to_string(u) + " is already in S_B");
  return instance.find(u);
}

}  // namespace

double marginal_gain(ModelKind model, const RapgView& instance, const ScoreState& state,
                     const NodeSet& seeds_a, const NodeSet& seeds_b, NodeId u) {
  require_layout(model, instance);
  const std::size_t local = checked_local(instance, seeds_a, seeds_b, u);
  if (local == instance.size()) return 0.0;
  return marginal_gain_at(model, instance, state, seeds_a, seeds_b, local);
}

ScoreState commit(ModelKind model, const RapgView& instance, const ScoreState& state,
                  const NodeSet& seeds_a, const NodeSet& seeds_b, NodeId u) {
  require_layout(model, instance);
  const std::size_t local = checked_local(instance, seeds_a, seeds_b, u);
  if (local == instance.size()) return state;
  return commit_at(model, instance, state, seeds_a, seeds_b, local);
}

bool covers_root_alone(ModelKind model, const RapgView& instance, const NodeSet& seeds_a,
                       std::size_t local) {
  if (model == ModelKind::kCoicm || !instance.a_reached()) {
    return !seeds_a.contains(instance.nodes[local]);
  }
  return instance.dist[local] < instance.d_a;
}

// Forward propagation ------------------------------------------------------

ForwardPropagator::ForwardPropagator(const DirectedGraph& graph, const NodeSet& seeds_a,
                                     const NodeSet& seeds_b)
    : graph_(graph) {
  require_disjoint(seeds_a, seeds_b);
  for (NodeId u : seeds_a) {
    if (u >= graph.node_count()) throw DomainError("S_A member outside the graph");
    seeds_.push_back(u);
  }
  a_count_ = seeds_.size();
  for (NodeId u : seeds_b) {
    if (u >= graph.node_count()) throw DomainError("S_B member outside the graph");
    seeds_.push_back(u);
  }
  words_ = (seeds_.size() + 63) / 64;
  dist_.assign(graph.node_count(), kUnreachable);
  sum_.assign(graph.node_count(), 0.0);
  count_.assign(graph.node_count(), 0);
}

template <typename LiveEdge>
double ForwardPropagator::run(ModelKind model, LiveEdge&& live) {
  if (seeds_.size() == a_count_) return 0.0;
  const bool distance = model == ModelKind::kDistance;
  if (distance && nearest_.empty()) nearest_.assign(graph_.node_count() * words_, 0);

  queue_.clear();
  for (std::size_t s = 0; s < seeds_.size(); ++s) {
    const NodeId u = seeds_[s];
    dist_[u] = 0;
    queue_.push_back(u);
    const bool is_b = s >= a_count_;
    sum_[u] = is_b ? 1.0 : 0.0;
    count_[u] = 1;
    if (distance) nearest_[u * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
  }

  double total = 0.0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    const std::uint32_t d = dist_[u];
    double p = 0.0;
    switch (model) {
      case ModelKind::kCoicm:
        // With B priority, u ends in I_B iff a B seed is among its nearest seeds.
        p = sum_[u] > 0.0 ? 1.0 : 0.0;
        break;
      case ModelKind::kDistance: {
        const std::uint64_t* bits = &nearest_[u * words_];
        std::uint32_t all = 0;
        std::uint32_t from_b = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          all += std::popcount(bits[w]);
          // Bits at index >= a_count_ belong to S_B.
          std::uint64_t b_mask = ~std::uint64_t{0};
          const std::size_t lo = w * 64;
          if (a_count_ >= lo + 64) {
            b_mask = 0;
          } else if (a_count_ > lo) {
            b_mask <<= (a_count_ - lo);
          }
          from_b += std::popcount(bits[w] & b_mask);
        }
        p = static_cast<double>(from_b) / static_cast<double>(all);
        break;
      }
      case ModelKind::kWave:
        p = sum_[u] / count_[u];
        break;
    }
    total += p;

    auto targets = graph_.out_neighbors(u);
    const std::size_t base = graph_.out_edge_begin(u);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const NodeId w = targets[j];
      if (dist_[w] != kUnreachable && dist_[w] <= d) continue;
      if (!live(base + j)) continue;
      if (dist_[w] == kUnreachable) {
        dist_[w] = d + 1;
        queue_.push_back(w);
      }
      switch (model) {
        case ModelKind::kCoicm:
          if (p > 0.0) sum_[w] = 1.0;
          break;
        case ModelKind::kDistance:
          for (std::size_t k = 0; k < words_; ++k) nearest_[w * words_ + k] |= nearest_[u * words_ + k];
          break;
        case ModelKind::kWave:
          sum_[w] += p;
          ++count_[w];
          break;
      }
    }
  }

  for (NodeId u : queue_) {
    dist_[u] = kUnreachable;
    sum_[u] = 0.0;
    count_[u] = 0;
    if (distance) std::fill_n(nearest_.begin() + u * words_, words_, 0);
  }
  return total;
}

double ForwardPropagator::simulate(ModelKind model, RngStream& rng) {
  const std::span<const double> probs = graph_.forward_probs();
  return run(model, [&](std::size_t e) { return rng.coin(probs[e]); });
}

double ForwardPropagator::simulate(ModelKind model, RngStream& rng, SharedWorld& world) {
  return run(model, [&](std::size_t e) { return world.live(e, rng); });
}

SharedWorld::SharedWorld(const DirectedGraph& graph)
    : probs_(graph.forward_probs()), state_(graph.edge_count(), 0) {}

bool SharedWorld::live(std::size_t edge, RngStream& rng) {
  if (state_[edge] == 0) {
    state_[edge] = rng.coin(probs_[edge]) ? 2 : 1;
    touched_.push_back(edge);
  }
  return state_[edge] == 2;
}

void SharedWorld::reset() {
  for (std::size_t e : touched_) state_[e] = 0;
  touched_.clear();
}

double ForwardPropagator::evaluate(ModelKind model, std::span<const char> live) {
  if (live.size() != graph_.edge_count()) throw ContractViolation("live-edge mask size mismatch");
  return run(model, [&](std::size_t e) { return live[e] != 0; });
}

double forward_simulate(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                        const NodeSet& seeds_b, RngStream& rng) {
  ForwardPropagator propagator(graph, seeds_a, seeds_b);
  return propagator.simulate(model, rng);
}

double exact_sigma(ModelKind model, const DirectedGraph& graph, const NodeSet& seeds_a,
                   const NodeSet& seeds_b) {
  ForwardPropagator propagator(graph, seeds_a, seeds_b);
  if (seeds_b.empty()) return 0.0;

  const std::vector<Edge> edges = graph.edges();
  std::vector<char> live(edges.size(), 0);
  std::vector<std::size_t> uncertain;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].prob >= 1.0) live[e] = 1;
    else if (edges[e].prob > 0.0) uncertain.push_back(e);
  }
  if (uncertain.size() > kExactSigmaMaxUncertainEdges) {
    throw LimitExceeded("exact_sigma enumerates at most " +
                        std::to_string(kExactSigmaMaxUncertainEdges) + " uncertain edges, graph has " +
                        std::to_string(uncertain.size()));
  }

  double total = 0.0;
  const std::uint64_t subsets = std::uint64_t{1} << uncertain.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double weight = 1.0;
    for (std::size_t i = 0; i < uncertain.size(); ++i) {
      const bool on = (mask >> i) & 1U;
      live[uncertain[i]] = on ? 1 : 0;
      const double p = edges[uncertain[i]].prob;
      weight *= on ? p : 1.0 - p;
    }
    total += weight * propagator.evaluate(model, live);
  }
  return total;
}

}  // namespace tcim
