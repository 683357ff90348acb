#include "tcim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

#include "tcim/error.hpp"
#include "tcim/rng.hpp"

namespace tcim {

NodeSet::NodeSet(std::size_t universe, std::span<const NodeId> nodes) : member_(universe, 0) {
  for (NodeId u : nodes) insert(u);
}

bool NodeSet::insert(NodeId u) {
  if (u >= member_.size()) {
    throw DomainError("node " + std::to_string(u) + " outside [0, " + std::to_string(member_.size()) +
                      ")");
  }
  if (member_[u]) return false;
  member_[u] = 1;
  order_.push_back(u);
  return true;
}

std::vector<NodeId> NodeSet::sorted() const {
  std::vector<NodeId> out = order_;
  std::sort(out.begin(), out.end());
  return out;
}

bool disjoint(const NodeSet& a, const NodeSet& b) {
  const NodeSet& small = a.size() <= b.size() ? a : b;
  const NodeSet& large = a.size() <= b.size() ? b : a;
  return std::none_of(small.begin(), small.end(), [&](NodeId u) { return large.contains(u); });
}

DirectedGraph DirectedGraph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                                        bool probabilities_assigned) {
  if (node_count >= kInvalidNode) throw DomainError("node count exceeds 32-bit id space");
  for (const Edge& e : edges) {
    if (e.source >= node_count || e.target >= node_count) {
      throw DomainError("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                        " references a node outside [0, " + std::to_string(node_count) + ")");
    }
    if (!(e.prob >= 0.0 && e.prob <= 1.0)) {
      throw DomainError("edge probability " + std::to_string(e.prob) + " outside [0, 1]");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.source == e.target; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  // Merge parallel arcs, keeping the maximum probability.
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!merged.empty() && merged.back().source == e.source && merged.back().target == e.target) {
      merged.back().prob = std::max(merged.back().prob, e.prob);
    } else {
      merged.push_back(e);
    }
  }

  DirectedGraph g;
  g.node_count_ = node_count;
  g.probabilities_assigned_ = probabilities_assigned;
  const std::size_t m = merged.size();

  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  for (const Edge& e : merged) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.target + 1];
  }
  std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(), g.out_offsets_.begin());
  std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(), g.in_offsets_.begin());

  g.out_targets_.resize(m);
  g.out_probs_.resize(m);
  g.in_sources_.resize(m);
  g.in_probs_.resize(m);
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    // merged is sorted by source, so the forward side fills in order.
    g.out_targets_[i] = merged[i].target;
    g.out_probs_[i] = merged[i].prob;
    const std::size_t slot = in_fill[merged[i].target]++;
    g.in_sources_[slot] = merged[i].source;
    g.in_probs_[slot] = merged[i].prob;
  }
  return g;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count_; ++u) {
    auto targets = out_neighbors(u);
    auto probs = out_probs(u);
    for (std::size_t i = 0; i < targets.size(); ++i) out.push_back({u, targets[i], probs[i]});
  }
  return out;
}

bool DirectedGraph::adjacency_consistent() const {
  std::vector<Edge> forward = edges();
  std::vector<Edge> reverse;
  reverse.reserve(edge_count());
  for (NodeId v = 0; v < node_count_; ++v) {
    auto sources = in_neighbors(v);
    auto probs = in_probs(v);
    for (std::size_t i = 0; i < sources.size(); ++i) reverse.push_back({sources[i], v, probs[i]});
  }
  auto order = [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  };
  std::sort(forward.begin(), forward.end(), order);
  std::sort(reverse.begin(), reverse.end(), order);
  return forward == reverse;
}

bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
  return a.node_count_ == b.node_count_ && a.out_offsets_ == b.out_offsets_ &&
         a.out_targets_ == b.out_targets_ && a.out_probs_ == b.out_probs_ &&
         a.in_offsets_ == b.in_offsets_ && a.in_sources_ == b.in_sources_ &&
         a.in_probs_ == b.in_probs_;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) fields.push_back(s.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view field, T& value) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end;
}

// Recognizes "# nodes: N" (and "# nodes N").
bool parse_node_header(std::string_view comment, std::size_t& nodes) {
  comment.remove_prefix(1);
  comment = trim(comment);
  constexpr std::string_view kKey = "nodes";
  if (comment.substr(0, kKey.size()) != kKey) return false;
  comment.remove_prefix(kKey.size());
  if (!comment.empty() && comment.front() == ':') comment.remove_prefix(1);
  auto fields = split_fields(trim(comment));
  return !fields.empty() && parse_number(fields.front(), nodes);
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in, Directedness directedness) {
  std::vector<Edge> edges;
  std::size_t node_count = 0;
  std::size_t declared_nodes = 0;
  bool all_have_prob = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::size_t nodes = 0;
      if (parse_node_header(text, nodes)) declared_nodes = std::max(declared_nodes, nodes);
      continue;
    }
    auto fields = split_fields(text);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected `u v [p]`, got `" + std::string(text) + "`");
    }
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_number(fields[0], u) || !parse_number(fields[1], v)) {
      throw ParseError(line_no, "node ids must be nonnegative integers");
    }
    if (u >= kInvalidNode - 1 || v >= kInvalidNode - 1) {
      throw ParseError(line_no, "node id exceeds 32-bit range");
    }
    double p = 0.0;
    if (fields.size() == 3) {
      if (!parse_number(fields[2], p)) throw ParseError(line_no, "malformed probability");
      if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("line " + std::to_string(line_no) + ": probability " +
                          std::string(fields[2]) + " outside [0, 1]");
      }
    } else {
      all_have_prob = false;
    }
    node_count = std::max<std::size_t>(node_count, std::max(u, v) + 1);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), p});
    if (directedness == Directedness::kUndirected) {
      edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(u), p});
    }
  }
  if (in.bad()) throw IoError("read failure while loading edge list");
  return DirectedGraph::from_edges(std::max(node_count, declared_nodes), std::move(edges),
                                   all_have_prob);
}

DirectedGraph load_edge_list_file(const std::string& path, Directedness directedness) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_edge_list(in, directedness);
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph) {
  out << "# nodes: " << graph.node_count() << " edges: " << graph.edge_count() << '\n';
  char buf[64];
  for (const Edge& e : graph.edges()) {
    out << e.source << ' ' << e.target;
    if (graph.probabilities_assigned()) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), e.prob);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

void write_edge_list_file(const std::string& path, const DirectedGraph& graph) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_edge_list(out, graph);
  if (!out) throw IoError("write failure on " + path);
}

DirectedGraph assign_weighted_ic(const DirectedGraph& graph) {
  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) e.prob = 1.0 / static_cast<double>(graph.in_degree(e.target));
  return DirectedGraph::from_edges(graph.node_count(), std::move(edges));
}

DirectedGraph assign_uniform_probability(const DirectedGraph& graph, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) e.prob = p;
  return DirectedGraph::from_edges(graph.node_count(), std::move(edges));
}

std::size_t restricted_edge_count(const DirectedGraph& graph, const NodeSet& blocked) {
  std::size_t removed = 0;
  for (NodeId v : blocked) {
    if (v < graph.node_count()) removed += graph.in_degree(v);
  }
  return graph.edge_count() - removed;
}

DirectedGraph generate_synthetic(SyntheticKind kind, std::size_t node_count, double param,
                                 std::uint64_t seed) {
  if (node_count < 1) throw DomainError("synthetic graphs need at least one node");
  RngStream rng(seed, /*stream=*/0x67656eULL);
  std::vector<Edge> edges;
  const std::uint64_t n = node_count;

  if (kind == SyntheticKind::kErdosRenyi) {
    if (!(param >= 0.0 && param <= 1.0)) throw DomainError("erdos_renyi p_edge outside [0, 1]");
    const std::uint64_t pairs = n * (n - 1);
    auto pair_to_edge = [&](std::uint64_t idx) {
      const std::uint64_t u = idx / (n - 1);
      const std::uint64_t j = idx % (n - 1);
      return Edge{static_cast<NodeId>(u), static_cast<NodeId>(j < u ? j : j + 1), 0.0};
    };
    if (param >= 1.0) {
      for (std::uint64_t idx = 0; idx < pairs; ++idx) edges.push_back(pair_to_edge(idx));
    } else if (param > 0.0) {
      // Skip over ordered pairs with geometric gaps (Batagelj-Brandes).
      std::geometric_distribution<std::uint64_t> gap(param);
      for (std::uint64_t idx = gap(rng.engine()); idx < pairs; idx += 1 + gap(rng.engine())) {
        edges.push_back(pair_to_edge(idx));
      }
    }
  } else {
    if (!(param >= 0.0) || param != static_cast<double>(static_cast<std::uint64_t>(param))) {
      throw DomainError("random_k_out k_out must be a nonnegative integer");
    }
    const auto k_out = static_cast<std::uint64_t>(param);
    if (k_out > n - 1) throw DomainError("random_k_out k_out exceeds n - 1");
    std::vector<NodeId> picked;
    for (std::uint64_t u = 0; u < n; ++u) {
      picked.clear();
      while (picked.size() < k_out) {
        std::uint64_t t = rng.below(n - 1);
        if (t >= u) ++t;
        if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
          picked.push_back(static_cast<NodeId>(t));
        }
      }
      for (NodeId t : picked) edges.push_back({static_cast<NodeId>(u), t, 0.0});
    }
  }
  return DirectedGraph::from_edges(node_count, std::move(edges), /*probabilities_assigned=*/false);
}

}  // namespace tcim
