#include "tcim/rapg.hpp"

#include <algorithm>
#include <cmath>

#include "tcim/error.hpp"

namespace tcim {

std::size_t RapgView::find(NodeId u) const {
  auto it = std::find(nodes.begin(), nodes.end(), u);
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::pair<NodeId, NodeId>> RapgInstance::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(preds.size());
  const RapgView v = view();
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    for (std::uint32_t s : v.predecessors(t)) out.emplace_back(nodes[s], nodes[t]);
  }
  return out;
}

void RapgInstance::clear() {
  nodes.clear();
  dist.clear();
  pred_end.clear();
  preds.clear();
  d_a = kUnreachable;
  coin_count = 0;
}

RapgPool::RapgPool(StorageLevel level) : level_(level) {}

void RapgPool::append(const RapgInstance& instance) {
  nodes_.insert(nodes_.end(), instance.nodes.begin(), instance.nodes.end());
  if (level_ != StorageLevel::kNodes) {
    dist_.insert(dist_.end(), instance.dist.begin(), instance.dist.end());
  }
  if (level_ == StorageLevel::kFull) {
    pred_end_.insert(pred_end_.end(), instance.pred_end.begin(), instance.pred_end.end());
    preds_.insert(preds_.end(), instance.preds.begin(), instance.preds.end());
  }
  d_a_.push_back(instance.d_a);
  node_begin_.push_back(nodes_.size());
  pred_begin_.push_back(preds_.size());
}

void RapgPool::append(RapgPool&& other) {
  if (other.level_ != level_) throw ContractViolation("cannot merge pools of different storage levels");
  if (empty()) {
    *this = std::move(other);
    return;
  }
  const std::uint64_t node_base = nodes_.size();
  const std::uint64_t pred_base = preds_.size();
  nodes_.insert(nodes_.end(), other.nodes_.begin(), other.nodes_.end());
  dist_.insert(dist_.end(), other.dist_.begin(), other.dist_.end());
  pred_end_.insert(pred_end_.end(), other.pred_end_.begin(), other.pred_end_.end());
  preds_.insert(preds_.end(), other.preds_.begin(), other.preds_.end());
  d_a_.insert(d_a_.end(), other.d_a_.begin(), other.d_a_.end());
  for (std::size_t i = 1; i < other.node_begin_.size(); ++i) {
    node_begin_.push_back(node_base + other.node_begin_[i]);
    pred_begin_.push_back(pred_base + other.pred_begin_[i]);
  }
  other.clear();
}

void RapgPool::clear() {
  node_begin_.assign(1, 0);
  pred_begin_.assign(1, 0);
  d_a_.clear();
  nodes_.clear();
  dist_.clear();
  pred_end_.clear();
  preds_.clear();
  d_a_.shrink_to_fit();
  nodes_.shrink_to_fit();
  dist_.shrink_to_fit();
  pred_end_.shrink_to_fit();
  preds_.shrink_to_fit();
  node_begin_.shrink_to_fit();
  pred_begin_.shrink_to_fit();
}

RapgView RapgPool::operator[](std::size_t i) const {
  const std::size_t b = node_begin_[i];
  const std::size_t len = node_begin_[i + 1] - b;
  RapgView v;
  v.nodes = {nodes_.data() + b, len};
  if (level_ != StorageLevel::kNodes) v.dist = {dist_.data() + b, len};
  if (level_ == StorageLevel::kFull) {
    v.pred_end = {pred_end_.data() + b, len};
    v.preds = {preds_.data() + pred_begin_[i], pred_begin_[i + 1] - pred_begin_[i]};
  }
  v.d_a = d_a_[i];
  return v;
}

std::size_t RapgPool::memory_bytes() const {
  return nodes_.size() * sizeof(NodeId) + dist_.size() * sizeof(std::uint32_t) +
         pred_end_.size() * sizeof(std::uint32_t) + preds_.size() * sizeof(std::uint32_t) +
         d_a_.size() * sizeof(std::uint32_t) +
         (node_begin_.size() + pred_begin_.size()) * sizeof(std::uint64_t);
}

RapgSampler::RapgSampler(const DirectedGraph& graph, const NodeSet& seeds_a)
    : graph_(graph), is_a_(graph.node_count(), 0), local_(graph.node_count(), kUnreachable) {
  for (NodeId u : seeds_a) {
    if (u >= graph.node_count()) throw DomainError("S_A member outside the graph");
    is_a_[u] = 1;
  }
}

void RapgSampler::sample(RngStream& rng, RapgInstance& out) {
  if (graph_.node_count() == 0) throw ContractViolation("cannot sample from an empty graph");
  const auto root = static_cast<NodeId>(rng.below(graph_.node_count()));
  sample_from(root, rng, out);
}

void RapgSampler::sample_from(NodeId root, RngStream& rng, RapgInstance& out) {
  out.clear();
  out.nodes.push_back(root);
  out.dist.push_back(0);
  local_[root] = 0;

  if (is_a_[root]) {
    out.d_a = 0;
  } else {
    // out.nodes doubles as the BFS queue: pops happen in local-index order.
    std::uint32_t stop_layer = kUnreachable;
    for (std::size_t head = 0; head < out.nodes.size(); ++head) {
      const std::uint32_t d = out.dist[head];
      if (d > stop_layer) break;
      const NodeId v = out.nodes[head];
      auto sources = graph_.in_neighbors(v);
      auto probs = graph_.in_probs(v);
      for (std::size_t e = 0; e < sources.size(); ++e) {
        const NodeId u = sources[e];
        std::uint32_t lu = local_[u];
        // Only edges that could lie on a shortest path get a coin.
        if (lu != kUnreachable && out.dist[lu] <= d) continue;
        ++out.coin_count;
        if (!rng.coin(probs[e])) continue;
        if (lu == kUnreachable) {
          lu = static_cast<std::uint32_t>(out.nodes.size());
          local_[u] = lu;
          out.nodes.push_back(u);
          out.dist.push_back(d + 1);
          if (is_a_[u] && stop_layer == kUnreachable) {
            stop_layer = d;
            out.d_a = d + 1;
          }
        }
        out.preds.push_back(lu);
      }
      out.pred_end.push_back(static_cast<std::uint32_t>(out.preds.size()));
    }
  }
  // Nodes never expanded have no recorded predecessors.
  out.pred_end.resize(out.nodes.size(), static_cast<std::uint32_t>(out.preds.size()));
  for (NodeId u : out.nodes) local_[u] = kUnreachable;
}

RapgInstance sample_rapg(const DirectedGraph& graph, const NodeSet& seeds_a, RngStream& rng) {
  RapgSampler sampler(graph, seeds_a);
  return sampler.sample(rng);
}

std::size_t rapg_width(const RapgView& instance, const DirectedGraph& graph, ModelKind model,
                       const NodeSet& seeds_a) {
  std::size_t width = 0;
  if (model == ModelKind::kCoicm || !instance.a_reached()) {
    for (NodeId u : instance.nodes) {
      if (!seeds_a.contains(u)) width += graph.in_degree(u);
    }
    return width;
  }
  if (instance.dist.size() != instance.size()) {
    throw ContractViolation("rapg_width needs hop distances for this model");
  }
  for (std::size_t i = 0; i < instance.size() && instance.dist[i] < instance.d_a; ++i) {
    width += graph.in_degree(instance.nodes[i]);
  }
  return width;
}

double alpha(std::size_t width, std::size_t m_prime, std::size_t k) {
  if (m_prime == 0) return 0.0;
  const double ratio = static_cast<double>(std::min(width, m_prime)) / static_cast<double>(m_prime);
  return 1.0 - std::pow(1.0 - ratio, static_cast<double>(k));
}

}  // namespace tcim
