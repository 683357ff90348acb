#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tcim/error.hpp"
#include "tcim/model.hpp"
#include "tcim/rapg.hpp"

using namespace tcim;

namespace {

// Reconstruction of the scoring example: 1->0, 2->0, 3->1, 4->1, 4->2, 5->2,
// all edges live, S_A = {3}, root 0.
struct ScoringExample {
  DirectedGraph graph = DirectedGraph::from_edges(
      6, {{1, 0, 1.0}, {2, 0, 1.0}, {3, 1, 1.0}, {4, 1, 1.0}, {4, 2, 1.0}, {5, 2, 1.0}});
  NodeSet seeds_a{6};
  RapgInstance instance;

  ScoringExample() {
    seeds_a.insert(3);
    RapgSampler sampler(graph, seeds_a);
    RngStream rng(0, 0);
    sampler.sample_from(0, rng, instance);
  }

  NodeSet b(std::initializer_list<NodeId> ids) const {
    NodeSet s(6);
    for (NodeId u : ids) s.insert(u);
    return s;
  }
};

struct RandomCase {
  DirectedGraph graph;
  NodeSet a;
  RapgInstance instance;
};

RandomCase random_case(std::mt19937_64& gen, std::size_t max_n, std::size_t max_m, std::uint64_t tag) {
  RandomCase c;
  c.graph = oracle::random_graph(gen, max_n, max_m);
  c.a = oracle::random_subset(gen, c.graph.node_count(), 0.25, NodeSet(c.graph.node_count()));
  RapgSampler sampler(c.graph, c.a);
  RngStream rng(tag, 0);
  sampler.sample(rng, c.instance);
  return c;
}

std::vector<NodeId> eligible_members(const RapgInstance& r, const NodeSet& a) {
  std::vector<NodeId> out;
  for (NodeId u : r.nodes) {
    if (!a.contains(u)) out.push_back(u);
  }
  return out;
}

}  // namespace

TEST(ScoringExample, CoicmCoversWheneverAnyNonSeedNodeIsChosen) {
  ScoringExample ex;
  const std::vector<NodeId> members{0, 1, 2, 4, 5};
  for (const NodeSet& s : oracle::all_subsets(6, members)) {
    EXPECT_EQ(score(ModelKind::kCoicm, ex.instance.view(), ex.seeds_a, s), s.empty() ? 0.0 : 1.0);
  }
}

TEST(ScoringExample, DistanceBasedValues) {
  ScoringExample ex;
  const auto f = [&](std::initializer_list<NodeId> ids) {
    return score(ModelKind::kDistance, ex.instance.view(), ex.seeds_a, ex.b(ids));
  };
  EXPECT_NEAR(f({4, 5}), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(f({4}), 0.5, 1e-12);
  EXPECT_NEAR(f({5}), 0.5, 1e-12);
}

TEST(ScoringExample, WaveValues) {
  ScoringExample ex;
  const auto f = [&](std::initializer_list<NodeId> ids) {
    return score(ModelKind::kWave, ex.instance.view(), ex.seeds_a, ex.b(ids));
  };
  EXPECT_NEAR(f({4, 5}), 0.75, 1e-12);
  EXPECT_NEAR(f({4}), 0.75, 1e-12);
  EXPECT_NEAR(f({5}), 0.5, 1e-12);
  EXPECT_NEAR(f({1}), 1.0, 1e-12);
}

TEST(ScoringExample, OracleAgreesOnEverySubset) {
  ScoringExample ex;
  const std::vector<NodeId> members{0, 1, 2, 4, 5};
  for (ModelKind m : kAllModels) {
    for (const NodeSet& s : oracle::all_subsets(6, members)) {
      EXPECT_NEAR(score(m, ex.instance.view(), ex.seeds_a, s),
                  oracle::brute_score(m, ex.instance, 6, ex.seeds_a, s), 1e-12)
          << model_name(m);
    }
  }
}

TEST(Score, MatchesOracleOnRandomInstances) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 400; ++t) {
    const RandomCase c = random_case(gen, 9, 20, t);
    const std::size_t n = c.graph.node_count();
    for (int s = 0; s < 5; ++s) {
      const NodeSet b = oracle::random_subset(gen, n, 0.3, c.a);
      for (ModelKind m : kAllModels) {
        EXPECT_NEAR(score(m, c.instance.view(), c.a, b), oracle::brute_score(m, c.instance, n, c.a, b),
                    1e-12);
      }
    }
  }
}

TEST(Score, OverlappingSeedSetsAreRejected) {
  ScoringExample ex;
  EXPECT_THROW(score(ModelKind::kCoicm, ex.instance.view(), ex.seeds_a, ex.b({3})), ContractViolation);
  const ScoreState st = init_state(ModelKind::kWave, ex.instance.view(), ex.seeds_a);
  EXPECT_THROW(marginal_gain(ModelKind::kWave, ex.instance.view(), st, ex.seeds_a, ex.b({}), 3),
               ContractViolation);
  EXPECT_THROW(marginal_gain(ModelKind::kWave, ex.instance.view(), st, ex.seeds_a, ex.b({4}), 4),
               ContractViolation);
}

TEST(Score, NodeOutsideInstanceHasNoGain) {
  ScoringExample ex;
  const DirectedGraph bigger = DirectedGraph::from_edges(7, ex.graph.edges());
  NodeSet a(7);
  a.insert(3);
  RapgInstance r;
  RapgSampler sampler(bigger, a);
  RngStream rng(0, 0);
  sampler.sample_from(0, rng, r);
  for (ModelKind m : kAllModels) {
    const ScoreState st = init_state(m, r.view(), a);
    EXPECT_EQ(marginal_gain(m, r.view(), st, a, NodeSet(7), 6), 0.0);
  }
}

TEST(Score, IncrementalCommitsMatchScratch) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 300; ++t) {
    const RandomCase c = random_case(gen, 9, 24, t);
    const std::size_t n = c.graph.node_count();
    std::vector<NodeId> order = eligible_members(c.instance, c.a);
    // Nodes outside the instance may be committed too; they must be no-ops.
    for (NodeId u = 0; u < n; ++u) {
      if (!c.a.contains(u) && std::find(order.begin(), order.end(), u) == order.end()) order.push_back(u);
    }
    std::shuffle(order.begin(), order.end(), gen);
    for (ModelKind m : kAllModels) {
      ScoreState st = init_state(m, c.instance.view(), c.a);
      NodeSet b(n);
      EXPECT_EQ(st.score, 0.0);
      for (NodeId u : order) {
        const double before = score(m, c.instance.view(), c.a, b);
        const double gain = marginal_gain(m, c.instance.view(), st, c.a, b, u);
        st = commit(m, c.instance.view(), st, c.a, b, u);
        b.insert(u);
        const double after = score(m, c.instance.view(), c.a, b);
        EXPECT_NEAR(st.score, after, 1e-12);
        EXPECT_NEAR(gain, after - before, 1e-12);
      }
    }
  }
}

TEST(Score, MonotoneAndSubmodularOnSmallInstances) {
  std::mt19937_64 gen(8);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 120; ++t) {
    const RandomCase c = random_case(gen, 8, 16, t);
    const std::vector<NodeId> items = eligible_members(c.instance, c.a);
    if (items.size() > 6 || items.size() < 2) continue;
    ++checked;
    const std::size_t n = c.graph.node_count();
    const auto subsets = oracle::all_subsets(n, items);
    for (ModelKind m : kAllModels) {
      for (const NodeSet& small : subsets) {
        for (const NodeSet& large : subsets) {
          bool subset = true;
          for (NodeId u : small) subset = subset && large.contains(u);
          if (!subset) continue;
          const double fs = score(m, c.instance.view(), c.a, small);
          const double fl = score(m, c.instance.view(), c.a, large);
          EXPECT_LE(fs, fl + 1e-12);
          for (NodeId x : items) {
            if (large.contains(x)) continue;
            NodeSet sx(n, small.members()), lx(n, large.members());
            sx.insert(x);
            lx.insert(x);
            EXPECT_GE(score(m, c.instance.view(), c.a, sx) - fs + 1e-12,
                      score(m, c.instance.view(), c.a, lx) - fl);
          }
        }
      }
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(Score, CoversRootAloneMatchesSingletonScore) {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 200; ++t) {
    const RandomCase c = random_case(gen, 9, 20, t);
    const std::size_t n = c.graph.node_count();
    for (std::size_t j = 0; j < c.instance.nodes.size(); ++j) {
      const NodeId u = c.instance.nodes[j];
      if (c.a.contains(u)) continue;
      NodeSet b(n);
      b.insert(u);
      for (ModelKind m : kAllModels) {
        EXPECT_EQ(covers_root_alone(m, c.instance.view(), c.a, j),
                  score(m, c.instance.view(), c.a, b) == 1.0);
      }
    }
  }
}

TEST(ExactSigma, SingleEdge) {
  const double p = 0.3;
  const DirectedGraph g = DirectedGraph::from_edges(2, {{0, 1, p}});
  NodeSet b(2);
  b.insert(0);
  for (ModelKind m : kAllModels) {
    EXPECT_NEAR(exact_sigma(m, g, NodeSet(2), b), 1.0 + p, 1e-12);
    EXPECT_EQ(exact_sigma(m, g, NodeSet(2), NodeSet(2)), 0.0);
  }
}

TEST(ExactSigma, MatchesWorldEnumerationOracle) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 150; ++t) {
    const DirectedGraph g = oracle::random_graph(gen, 8, 12);
    const std::size_t n = g.node_count();
    const NodeSet a = oracle::random_subset(gen, n, 0.25, NodeSet(n));
    const NodeSet b = oracle::random_subset(gen, n, 0.35, a);
    for (ModelKind m : kAllModels) {
      EXPECT_NEAR(exact_sigma(m, g, a, b), oracle::brute_sigma(m, g, a, b), 1e-9);
    }
  }
}

TEST(ExactSigma, RefusesTooManyUncertainEdges) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 21; ++u) edges.push_back({u, u + 1, 0.5});
  const DirectedGraph g = DirectedGraph::from_edges(22, edges);
  NodeSet b(22);
  b.insert(0);
  EXPECT_THROW(exact_sigma(ModelKind::kCoicm, g, NodeSet(22), b), LimitExceeded);
  // Certain edges do not count towards the guard.
  EXPECT_NEAR(exact_sigma(ModelKind::kCoicm, assign_uniform_probability(g, 1.0), NodeSet(22), b), 22.0,
              1e-12);
}

TEST(ForwardSimulation, LiveMaskEvaluationMatchesOracle) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 200; ++t) {
    const DirectedGraph g = oracle::random_graph(gen, 8, 14);
    const std::size_t n = g.node_count();
    const NodeSet a = oracle::random_subset(gen, n, 0.3, NodeSet(n));
    const NodeSet b = oracle::random_subset(gen, n, 0.3, a);
    const std::vector<Edge> edges = g.edges();
    std::vector<char> live(edges.size());
    std::vector<oracle::Arc> arcs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      live[e] = static_cast<char>(gen() % 2);
      if (live[e]) arcs.emplace_back(edges[e].source, edges[e].target);
    }
    ForwardPropagator prop(g, a, b);
    for (ModelKind m : kAllModels) {
      double expected = 0.0;
      for (double x : oracle::world_adoption(m, n, arcs, a, b)) expected += x;
      EXPECT_NEAR(prop.evaluate(m, live), expected, 1e-12);
    }
  }
}

TEST(ForwardSimulation, DeterministicGraphNeedsOneSimulation) {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 50; ++t) {
    const DirectedGraph g = assign_uniform_probability(oracle::random_graph(gen, 10, 30), 1.0);
    const std::size_t n = g.node_count();
    const NodeSet a = oracle::random_subset(gen, n, 0.3, NodeSet(n));
    const NodeSet b = oracle::random_subset(gen, n, 0.3, a);
    RngStream rng(t, 0);
    for (ModelKind m : kAllModels) {
      EXPECT_NEAR(forward_simulate(m, g, a, b, rng), oracle::brute_sigma(m, g, a, b), 1e-12);
    }
  }
}

TEST(ForwardSimulation, MeanConvergesToExact) {
  const DirectedGraph g = DirectedGraph::from_edges(
      5, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.25}, {3, 2, 0.75}, {2, 4, 0.5}, {3, 4, 0.25}});
  NodeSet a(5), b(5);
  a.insert(3);
  b.insert(0);
  for (ModelKind m : kAllModels) {
    ForwardPropagator prop(g, a, b);
    RngStream rng(1, 0);
    const int sims = 40000;
    double sum = 0, sq = 0;
    for (int i = 0; i < sims; ++i) {
      const double x = prop.simulate(m, rng);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / sims;
    const double se = std::sqrt((sq / sims - mean * mean) / sims);
    EXPECT_NEAR(mean, exact_sigma(m, g, a, b), 4 * se) << model_name(m);
  }
}

TEST(ModelKind, NamesRoundTrip) {
  for (ModelKind m : kAllModels) EXPECT_EQ(parse_model(model_name(m)), m);
  EXPECT_THROW(parse_model("bogus"), DomainError);
}
