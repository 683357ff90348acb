#include "tcim/tcim.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "tcim/baselines.hpp"
#include "tcim/engine.hpp"
#include "tcim/error.hpp"
#include "tcim/graph.hpp"
#include "tcim/model.hpp"

struct tcim_graph {
  tcim::DirectedGraph graph;
};

struct tcim_result {
  std::vector<uint32_t> seeds;
  tcim_stats stats;
};

struct tcim_baseline_result {
  std::vector<uint32_t> seeds;
  tcim_baseline_stats stats;
};

namespace {

thread_local std::string last_error;

tcim_status fail(tcim_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
tcim_status guarded(Body&& body) {
  try {
    body();
    return TCIM_OK;
  } catch (const tcim::Error& e) {
    return fail(static_cast<tcim_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TCIM_ERR_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(TCIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TCIM_ERR_INTERNAL, "unknown error");
  }
}

tcim::ModelKind to_model(tcim_model model) {
  switch (model) {
    case TCIM_MODEL_COICM: return tcim::ModelKind::kCoicm;
    case TCIM_MODEL_DISTANCE: return tcim::ModelKind::kDistance;
    case TCIM_MODEL_WAVE: return tcim::ModelKind::kWave;
  }
  throw tcim::DomainError("unknown model");
}

tcim::NodeSet make_set(const tcim_graph* graph, const uint32_t* ids, size_t count) {
  if (count > 0 && ids == nullptr) throw tcim::DomainError("seed array is null");
  tcim::NodeSet set(graph->graph.node_count());
  for (size_t i = 0; i < count; ++i) set.insert(ids[i]);
  return set;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw tcim::DomainError(std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* tcim_last_error(void) { return last_error.c_str(); }

const char* tcim_status_name(tcim_status status) {
  switch (status) {
    case TCIM_OK: return "ok";
    case TCIM_ERR_INTERNAL: return "internal error";
    case TCIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TCIM_ERR_CONTRACT: return "contract violation";
    case TCIM_ERR_IO: return "i/o error";
    case TCIM_ERR_PARSE: return "parse error";
    case TCIM_ERR_LIMIT: return "limit exceeded";
  }
  return "unknown status";
}

tcim_status tcim_graph_load(const char* path, int undirected, tcim_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output handle");
    auto g = std::make_unique<tcim_graph>();
    g->graph = tcim::load_edge_list_file(
        path, undirected ? tcim::Directedness::kUndirected : tcim::Directedness::kDirected);
    *out = g.release();
  });
}

tcim_status tcim_graph_from_edges(size_t node_count, size_t edge_count, const uint32_t* sources,
                                  const uint32_t* targets, const double* prob, tcim_graph** out) {
  return guarded([&] {
    require(out, "output handle");
    if (edge_count > 0) {
      require(sources, "sources");
      require(targets, "targets");
    }
    std::vector<tcim::Edge> edges(edge_count);
    for (size_t i = 0; i < edge_count; ++i) {
      edges[i] = {sources[i], targets[i], prob ? prob[i] : 0.0};
    }
    auto g = std::make_unique<tcim_graph>();
    g->graph = tcim::DirectedGraph::from_edges(node_count, std::move(edges), prob != nullptr);
    *out = g.release();
  });
}

tcim_status tcim_graph_generate(tcim_generator kind, size_t node_count, double param, uint64_t seed,
                                tcim_graph** out) {
  return guarded([&] {
    require(out, "output handle");
    tcim::SyntheticKind k;
    switch (kind) {
      case TCIM_GEN_ERDOS_RENYI: k = tcim::SyntheticKind::kErdosRenyi; break;
      case TCIM_GEN_RANDOM_KOUT: k = tcim::SyntheticKind::kRandomKOut; break;
      default: throw tcim::DomainError("unknown generator");
    }
    auto g = std::make_unique<tcim_graph>();
    g->graph = tcim::generate_synthetic(k, node_count, param, seed);
    *out = g.release();
  });
}

tcim_status tcim_graph_assign_weighted_ic(tcim_graph* graph) {
  return guarded([&] {
    require(graph, "graph");
    graph->graph = tcim::assign_weighted_ic(graph->graph);
  });
}

tcim_status tcim_graph_assign_uniform(tcim_graph* graph, double p) {
  return guarded([&] {
    require(graph, "graph");
    graph->graph = tcim::assign_uniform_probability(graph->graph, p);
  });
}

tcim_status tcim_graph_write(const tcim_graph* graph, const char* path) {
  return guarded([&] {
    require(graph, "graph");
    require(path, "path");
    tcim::write_edge_list_file(path, graph->graph);
  });
}

size_t tcim_graph_node_count(const tcim_graph* graph) { return graph ? graph->graph.node_count() : 0; }
size_t tcim_graph_edge_count(const tcim_graph* graph) { return graph ? graph->graph.edge_count() : 0; }
int tcim_graph_has_probabilities(const tcim_graph* graph) {
  return graph && graph->graph.probabilities_assigned() ? 1 : 0;
}
void tcim_graph_free(tcim_graph* graph) { delete graph; }

void tcim_params_default(tcim_params* params) {
  if (params == nullptr) return;
  *params = {1, 0.1, 1.0, TCIM_MODEL_COICM, 0, 1};
}

tcim_status tcim_run(const tcim_graph* graph, const uint32_t* seeds_a, size_t seeds_a_count,
                     const tcim_params* params, tcim_result** out) {
  return guarded([&] {
    require(graph, "graph");
    require(params, "params");
    require(out, "output handle");
    const tcim::NodeSet s_a = make_set(graph, seeds_a, seeds_a_count);
    tcim::TcimParams p;
    p.k = params->k;
    p.epsilon = params->epsilon;
    p.ell = params->ell;
    p.model = to_model(params->model);
    p.seed = params->seed;
    p.threads = params->threads == 0 ? 1 : params->threads;
    const tcim::TcimResult r = tcim::tcim(graph->graph, s_a, p);
    auto res = std::make_unique<tcim_result>();
    res->seeds.assign(r.seeds_b.begin(), r.seeds_b.end());
    res->stats = {r.theta,
                  r.lb_estimate,
                  r.lb_refined,
                  r.spread_estimate,
                  r.ell_prime,
                  r.epsilon_prime,
                  r.theta_prime,
                  r.estimate_rounds,
                  r.width_clamps,
                  r.instances_generated,
                  r.coins_total,
                  r.peak_memory_bytes,
                  r.times.estimate_s,
                  r.times.refine_s,
                  r.times.select_s,
                  r.times.total_s};
    *out = res.release();
  });
}

size_t tcim_result_seed_count(const tcim_result* result) { return result ? result->seeds.size() : 0; }
const uint32_t* tcim_result_seeds(const tcim_result* result) {
  return result ? result->seeds.data() : nullptr;
}
void tcim_result_stats(const tcim_result* result, tcim_stats* out) {
  if (result && out) *out = result->stats;
}
void tcim_result_free(tcim_result* result) { delete result; }

tcim_status tcim_run_baseline(const tcim_graph* graph, const uint32_t* seeds_a, size_t seeds_a_count,
                              const tcim_baseline_params* params, tcim_baseline_result** out) {
  return guarded([&] {
    require(graph, "graph");
    require(params, "params");
    require(out, "output handle");
    const tcim::NodeSet s_a = make_set(graph, seeds_a, seeds_a_count);
    const tcim::ModelKind model = to_model(params->model);
    const unsigned threads = params->threads == 0 ? 1 : params->threads;
    tcim::BaselineResult r;
    if (params->algorithm == TCIM_BASELINE_SINGLEDISCOUNT) {
      r = tcim::single_discount(graph->graph, s_a, params->k);
    } else {
      if (!graph->graph.probabilities_assigned()) {
        throw tcim::ContractViolation("edge probabilities are not assigned");
      }
      const tcim::SpreadEvaluator eval =
          params->exact ? tcim::exact_evaluator(model, graph->graph, s_a)
                        : tcim::mc_evaluator(model, graph->graph, s_a, params->simulations,
                                             params->seed, threads);
      switch (params->algorithm) {
        case TCIM_BASELINE_GREEDYMC: r = tcim::greedy_mc(graph->graph, s_a, params->k, eval); break;
        case TCIM_BASELINE_CELF: r = tcim::celf(graph->graph, s_a, params->k, eval, false); break;
        case TCIM_BASELINE_CELFPP: r = tcim::celf(graph->graph, s_a, params->k, eval, true); break;
        default: throw tcim::DomainError("unknown baseline");
      }
    }
    auto res = std::make_unique<tcim_baseline_result>();
    res->seeds.assign(r.seeds_b.begin(), r.seeds_b.end());
    res->stats = {r.spread_estimate, r.evaluations, r.simulations_used, r.wall_time_s};
    *out = res.release();
  });
}

size_t tcim_baseline_seed_count(const tcim_baseline_result* result) {
  return result ? result->seeds.size() : 0;
}
const uint32_t* tcim_baseline_seeds(const tcim_baseline_result* result) {
  return result ? result->seeds.data() : nullptr;
}
void tcim_baseline_stats_get(const tcim_baseline_result* result, tcim_baseline_stats* out) {
  if (result && out) *out = result->stats;
}
void tcim_baseline_result_free(tcim_baseline_result* result) { delete result; }

tcim_status tcim_estimate_sigma(const tcim_graph* graph, tcim_model model, const uint32_t* seeds_a,
                                size_t seeds_a_count, const uint32_t* seeds_b, size_t seeds_b_count,
                                uint64_t simulations, uint64_t seed, unsigned threads, double* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "output");
    if (!graph->graph.probabilities_assigned()) {
      throw tcim::ContractViolation("edge probabilities are not assigned");
    }
    const tcim::NodeSet s_a = make_set(graph, seeds_a, seeds_a_count);
    const tcim::NodeSet s_b = make_set(graph, seeds_b, seeds_b_count);
    *out = tcim::estimate_sigma_mc(to_model(model), graph->graph, s_a, s_b, simulations, seed,
                                   threads == 0 ? 1 : threads);
  });
}

tcim_status tcim_exact_sigma(const tcim_graph* graph, tcim_model model, const uint32_t* seeds_a,
                             size_t seeds_a_count, const uint32_t* seeds_b, size_t seeds_b_count,
                             double* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "output");
    const tcim::NodeSet s_a = make_set(graph, seeds_a, seeds_a_count);
    const tcim::NodeSet s_b = make_set(graph, seeds_b, seeds_b_count);
    *out = tcim::exact_sigma(to_model(model), graph->graph, s_a, s_b);
  });
}

tcim_status tcim_greedymc_min_r(size_t n, size_t k, double ell, double epsilon, double opt_lower,
                                uint64_t* out) {
  return guarded([&] {
    require(out, "output");
    *out = tcim::greedymc_min_r(n, k, ell, epsilon, opt_lower);
  });
}

}  // extern "C"
