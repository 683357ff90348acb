#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tcim/error.hpp"
#include "tcim/graph.hpp"

using namespace tcim;

namespace {

DirectedGraph parse(const std::string& text, Directedness d = Directedness::kDirected) {
  std::istringstream in(text);
  return load_edge_list(in, d);
}

}  // namespace

TEST(NodeSet, InsertContainsAndOrder) {
  NodeSet s(5);
  EXPECT_TRUE(s.insert(3));
  EXPECT_TRUE(s.insert(1));
  EXPECT_FALSE(s.insert(3));
  EXPECT_TRUE(s.contains(1));
  EXPECT_FALSE(s.contains(0));
  EXPECT_FALSE(s.contains(99));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(std::vector<NodeId>(s.begin(), s.end()), (std::vector<NodeId>{3, 1}));
  EXPECT_EQ(s.sorted(), (std::vector<NodeId>{1, 3}));
  EXPECT_THROW(s.insert(5), DomainError);
}

TEST(NodeSet, Disjoint) {
  const std::vector<NodeId> x{0, 2}, y{1, 3}, z{2};
  EXPECT_TRUE(disjoint(NodeSet(4, x), NodeSet(4, y)));
  EXPECT_FALSE(disjoint(NodeSet(4, x), NodeSet(4, z)));
}

TEST(Loader, ParsesCommentsTwoAndThreeColumns) {
  const DirectedGraph g = parse("# a comment\n0 1 0.5\n\n1 2 0.25\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.probabilities_assigned());
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 0.5}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2, 0.25}));

  const DirectedGraph bare = parse("0 1\n2 0\n");
  EXPECT_FALSE(bare.probabilities_assigned());
  EXPECT_EQ(bare.edge_count(), 2u);
}

TEST(Loader, NodeCountIsOnePlusMaxId) {
  EXPECT_EQ(parse("0 7\n").node_count(), 8u);
  // The writer's header keeps trailing isolated nodes.
  EXPECT_EQ(parse("# nodes: 12\n0 7\n").node_count(), 12u);
}

TEST(Loader, MalformedLineReportsLineNumber) {
  try {
    parse("0 1\n# c\n0 x\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse("0 1 0.5 9\n"), ParseError);
  EXPECT_THROW(parse("-1 2\n"), ParseError);
  EXPECT_THROW(parse("0 1 abc\n"), ParseError);
}

TEST(Loader, ProbabilityOutsideUnitIntervalIsDomainError) {
  EXPECT_THROW(parse("0 1 1.5\n"), DomainError);
  EXPECT_THROW(parse("0 1 -0.1\n"), DomainError);
}

TEST(Loader, UndirectedExpandsBothArcs) {
  const DirectedGraph g = parse("0 1 0.5\n1 2 0.25\n", Directedness::kUndirected);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.in_degree(1), 2u);
  EXPECT_EQ(g.out_degree(1), 2u);
}

TEST(Loader, MissingFileIsIoError) {
  EXPECT_THROW(load_edge_list_file("/nonexistent/graph.txt", Directedness::kDirected), IoError);
}

TEST(Graph, SelfLoopsDroppedAndParallelArcsKeepMaxProbability) {
  const DirectedGraph g =
      DirectedGraph::from_edges(3, {{0, 0, 0.5}, {0, 1, 0.2}, {0, 1, 0.7}, {1, 2, 0.1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.out_probs(0)[0], 0.7);
}

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(DirectedGraph::from_edges(2, {{0, 2, 0.5}}), DomainError);
  EXPECT_THROW(DirectedGraph::from_edges(2, {{0, 1, 2.0}}), DomainError);
}

TEST(Graph, ForwardAndReverseAdjacencyAgreeOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const DirectedGraph g = oracle::random_graph(rng, 12, 40);
    ASSERT_TRUE(g.adjacency_consistent());
    std::size_t in_total = 0, out_total = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      in_total += g.in_degree(u);
      out_total += g.out_degree(u);
    }
    EXPECT_EQ(in_total, g.edge_count());
    EXPECT_EQ(out_total, g.edge_count());
  }
}

TEST(Graph, WriteLoadRoundTrip) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    DirectedGraph g = oracle::random_graph(rng, 10, 30);
    g = assign_uniform_probability(g, 1.0 / 3.0);
    std::stringstream buf;
    write_edge_list(buf, g);
    EXPECT_EQ(load_edge_list(buf, Directedness::kDirected), g);
  }
  // Isolated trailing nodes and a missing probability column survive too.
  const DirectedGraph bare = DirectedGraph::from_edges(6, {{0, 1, 0.0}}, false);
  std::stringstream buf;
  write_edge_list(buf, bare);
  const DirectedGraph back = load_edge_list(buf, Directedness::kDirected);
  EXPECT_EQ(back.node_count(), 6u);
  EXPECT_FALSE(back.probabilities_assigned());
}

TEST(Graph, WeightedIcIsInverseInDegree) {
  const DirectedGraph g = assign_weighted_ic(parse("0 2\n1 2\n3 2\n2 0\n"));
  ASSERT_TRUE(g.probabilities_assigned());
  for (const Edge& e : g.edges()) {
    EXPECT_DOUBLE_EQ(e.prob, 1.0 / static_cast<double>(g.in_degree(e.target)));
  }
  EXPECT_DOUBLE_EQ(g.in_probs(2)[0], 1.0 / 3.0);
}

TEST(Graph, UniformProbability) {
  const DirectedGraph g = assign_uniform_probability(parse("0 1\n1 2\n"), 0.3);
  for (const Edge& e : g.edges()) EXPECT_DOUBLE_EQ(e.prob, 0.3);
  EXPECT_THROW(assign_uniform_probability(g, 1.1), DomainError);
}

TEST(Graph, RestrictedEdgeCount) {
  const DirectedGraph path = parse("0 1\n1 2\n");
  const std::vector<NodeId> blocked{1};
  EXPECT_EQ(restricted_edge_count(path, NodeSet(3, blocked)), 1u);
  EXPECT_EQ(restricted_edge_count(path, NodeSet(3)), 2u);
}

TEST(Generator, RandomKOutHasExactlyKOutArcsPerNode) {
  const DirectedGraph g = generate_synthetic(SyntheticKind::kRandomKOut, 10, 2, 1);
  EXPECT_EQ(g.node_count(), 10u);
  EXPECT_EQ(g.edge_count(), 20u);
  for (NodeId u = 0; u < 10; ++u) EXPECT_EQ(g.out_degree(u), 2u);
  for (const Edge& e : g.edges()) EXPECT_NE(e.source, e.target);
  EXPECT_FALSE(g.probabilities_assigned());
}

TEST(Generator, DeterministicPerSeed) {
  for (auto kind : {SyntheticKind::kErdosRenyi, SyntheticKind::kRandomKOut}) {
    const double param = kind == SyntheticKind::kErdosRenyi ? 0.05 : 3;
    const DirectedGraph a = generate_synthetic(kind, 200, param, 42);
    const DirectedGraph b = generate_synthetic(kind, 200, param, 42);
    const DirectedGraph c = generate_synthetic(kind, 200, param, 43);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == c);
  }
}

TEST(Generator, ErdosRenyiDensityMatchesP) {
  const DirectedGraph g = generate_synthetic(SyntheticKind::kErdosRenyi, 400, 0.02, 3);
  const double expected = 0.02 * 400 * 399;
  // Binomial standard deviation is about 56; allow 5 of them.
  EXPECT_NEAR(static_cast<double>(g.edge_count()), expected, 5 * std::sqrt(expected));
}

TEST(Generator, RejectsBadParameters) {
  EXPECT_THROW(generate_synthetic(SyntheticKind::kErdosRenyi, 10, 1.5, 0), DomainError);
  EXPECT_THROW(generate_synthetic(SyntheticKind::kRandomKOut, 10, 10, 0), DomainError);
  EXPECT_THROW(generate_synthetic(SyntheticKind::kRandomKOut, 10, 2.5, 0), DomainError);
}
