#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs(std::size_t n, const std::vector<std::vector<NodeId>>& out,
                             const std::vector<NodeId>& sources) {
  std::vector<std::size_t> d(n, kFar);
  std::deque<NodeId> q;
  for (NodeId s : sources) {
    d[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    for (NodeId v : out[u]) {
      if (d[v] == kFar) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
    }
  }
  return d;
}

}  // namespace

std::vector<double> world_adoption(ModelKind model, std::size_t n, const std::vector<Arc>& live,
                                   const NodeSet& a, const NodeSet& b) {
  std::vector<std::vector<NodeId>> out(n), in(n);
  for (auto [u, v] : live) {
    out[u].push_back(v);
    in[v].push_back(u);
  }
  std::vector<NodeId> seeds(a.begin(), a.end());
  seeds.insert(seeds.end(), b.begin(), b.end());
  const std::vector<std::size_t> d = bfs(n, out, seeds);

  std::vector<double> p(n, 0.0);
  if (model == ModelKind::kDistance) {
    std::vector<std::vector<std::size_t>> from;
    for (NodeId s : seeds) from.push_back(bfs(n, out, {s}));
    for (std::size_t v = 0; v < n; ++v) {
      if (d[v] == kFar) continue;
      double na = 0, nb = 0;
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (from[i][v] != d[v]) continue;
        (b.contains(seeds[i]) ? nb : na) += 1;
      }
      p[v] = nb / (na + nb);
    }
    return p;
  }

  std::vector<NodeId> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<NodeId>(v);
  std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) { return d[x] < d[y]; });
  for (NodeId v : order) {
    if (d[v] == kFar) break;
    if (d[v] == 0) {
      p[v] = b.contains(v) ? 1.0 : 0.0;
      continue;
    }
    double sum = 0, count = 0;
    bool any_b = false;
    for (NodeId u : in[v]) {
      if (d[u] + 1 != d[v]) continue;
      sum += p[u];
      count += 1;
      any_b = any_b || p[u] == 1.0;
    }
    p[v] = model == ModelKind::kCoicm ? (any_b ? 1.0 : 0.0) : sum / count;
  }
  return p;
}

double brute_sigma(ModelKind model, const DirectedGraph& graph, const NodeSet& a, const NodeSet& b) {
  // Arcs with p = 1 are always live and arcs with p = 0 never are; only the
  // rest are enumerated.
  std::vector<Arc> fixed;
  std::vector<tcim::Edge> edges;
  for (const tcim::Edge& e : graph.edges()) {
    if (e.prob >= 1.0) {
      fixed.emplace_back(e.source, e.target);
    } else if (e.prob > 0.0) {
      edges.push_back(e);
    }
  }
  if (edges.size() > 16) throw std::invalid_argument("brute_sigma: too many uncertain edges");
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    double weight = 1.0;
    std::vector<Arc> live = fixed;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (mask >> e & 1) {
        weight *= edges[e].prob;
        live.emplace_back(edges[e].source, edges[e].target);
      } else {
        weight *= 1.0 - edges[e].prob;
      }
    }
    if (weight == 0.0) continue;
    double spread = 0.0;
    for (double x : world_adoption(model, graph.node_count(), live, a, b)) spread += x;
    total += weight * spread;
  }
  return total;
}

double brute_score(ModelKind model, const tcim::RapgInstance& instance, std::size_t n,
                   const NodeSet& a, const NodeSet& b) {
  // Seeds outside the instance cannot influence its root through it.
  NodeSet a_in(n), b_in(n);
  for (NodeId u : instance.nodes) {
    if (a.contains(u)) a_in.insert(u);
    if (b.contains(u)) b_in.insert(u);
  }
  return world_adoption(model, n, instance.edges(), a_in, b_in)[instance.root()];
}

DirectedGraph random_graph(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_n)(rng);
  std::vector<Arc> all;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v) all.emplace_back(u, v);
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t m =
      std::uniform_int_distribution<std::size_t>(1, std::min(max_m, all.size()))(rng);
  static constexpr double kProbs[] = {0.25, 0.5, 0.75, 1.0};
  std::vector<tcim::Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.push_back({all[i].first, all[i].second, kProbs[rng() % 4]});
  }
  return DirectedGraph::from_edges(n, std::move(edges));
}

NodeSet random_subset(std::mt19937_64& rng, std::size_t n, double p, const NodeSet& exclude) {
  NodeSet out(n);
  std::bernoulli_distribution keep(p);
  for (NodeId u = 0; u < n; ++u) {
    if (!exclude.contains(u) && keep(rng)) out.insert(u);
  }
  return out;
}

std::vector<NodeSet> all_subsets(std::size_t n, const std::vector<NodeId>& items) {
  std::vector<NodeSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    NodeSet s(n);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (mask >> i & 1) s.insert(items[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

double brute_best_coverage(ModelKind model, const std::vector<tcim::RapgInstance>& pool,
                           std::size_t n, const NodeSet& a, std::size_t k) {
  std::vector<NodeId> eligible;
  for (NodeId u = 0; u < n; ++u) {
    if (!a.contains(u)) eligible.push_back(u);
  }
  double best = 0.0;
  for (const NodeSet& s : all_subsets(n, eligible)) {
    if (s.size() != k) continue;
    double f = 0.0;
    for (const auto& r : pool) f += brute_score(model, r, n, a, s);
    best = std::max(best, f);
  }
  return best;
}

}  // namespace oracle
