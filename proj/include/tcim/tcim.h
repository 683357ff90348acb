/* C interface of the tcim library.
 *
 * Every fallible call returns a tcim_status; on failure tcim_last_error()
 * describes the problem (per thread, valid until the next failing call).
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function. Node ids are 0-based.
 */
#ifndef TCIM_TCIM_H
#define TCIM_TCIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TCIM_API __declspec(dllexport)
#else
#define TCIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcim_status {
  TCIM_OK = 0,
  TCIM_ERR_INTERNAL = 1,
  TCIM_ERR_INVALID_ARGUMENT = 2,
  TCIM_ERR_CONTRACT = 3,
  TCIM_ERR_IO = 4,
  TCIM_ERR_PARSE = 5,
  TCIM_ERR_LIMIT = 6
} tcim_status;

typedef enum tcim_model {
  TCIM_MODEL_COICM = 0,
  TCIM_MODEL_DISTANCE = 1,
  TCIM_MODEL_WAVE = 2
} tcim_model;

typedef enum tcim_generator {
  TCIM_GEN_ERDOS_RENYI = 0, /* param: arc probability */
  TCIM_GEN_RANDOM_KOUT = 1  /* param: out-degree per node */
} tcim_generator;

typedef enum tcim_baseline {
  TCIM_BASELINE_GREEDYMC = 0,
  TCIM_BASELINE_CELF = 1,
  TCIM_BASELINE_CELFPP = 2,
  TCIM_BASELINE_SINGLEDISCOUNT = 3
} tcim_baseline;

typedef struct tcim_graph tcim_graph;
typedef struct tcim_result tcim_result;
typedef struct tcim_baseline_result tcim_baseline_result;

TCIM_API const char* tcim_last_error(void);
TCIM_API const char* tcim_status_name(tcim_status status);

/* ---- graphs ---- */

TCIM_API tcim_status tcim_graph_load(const char* path, int undirected, tcim_graph** out);
/* prob may be NULL, leaving probabilities unassigned. */
TCIM_API tcim_status tcim_graph_from_edges(size_t node_count, size_t edge_count,
                                           const uint32_t* sources, const uint32_t* targets,
                                           const double* prob, tcim_graph** out);
TCIM_API tcim_status tcim_graph_generate(tcim_generator kind, size_t node_count, double param,
                                         uint64_t seed, tcim_graph** out);
TCIM_API tcim_status tcim_graph_assign_weighted_ic(tcim_graph* graph);
TCIM_API tcim_status tcim_graph_assign_uniform(tcim_graph* graph, double p);
TCIM_API tcim_status tcim_graph_write(const tcim_graph* graph, const char* path);
TCIM_API size_t tcim_graph_node_count(const tcim_graph* graph);
TCIM_API size_t tcim_graph_edge_count(const tcim_graph* graph);
TCIM_API int tcim_graph_has_probabilities(const tcim_graph* graph);
TCIM_API void tcim_graph_free(tcim_graph* graph);

/* ---- TCIM ---- */

typedef struct tcim_params {
  size_t k;
  double epsilon; /* (0, 1] */
  double ell;     /* >= 0.5 */
  tcim_model model;
  uint64_t seed;
  unsigned threads; /* 0 is treated as 1 */
} tcim_params;

/* k = 1, epsilon = 0.1, ell = 1, COICM, seed 0, one thread. */
TCIM_API void tcim_params_default(tcim_params* params);

typedef struct tcim_stats {
  uint64_t theta;
  double lb_estimate;
  double lb_refined;
  double spread_estimate;
  double ell_prime;
  double epsilon_prime;
  uint64_t theta_prime;
  uint64_t estimate_rounds;
  uint64_t width_clamps;
  uint64_t instances_generated;
  uint64_t coins_total;
  uint64_t peak_memory_bytes;
  double time_estimate_s;
  double time_refine_s;
  double time_select_s;
  double time_total_s;
} tcim_stats;

TCIM_API tcim_status tcim_run(const tcim_graph* graph, const uint32_t* seeds_a, size_t seeds_a_count,
                              const tcim_params* params, tcim_result** out);
TCIM_API size_t tcim_result_seed_count(const tcim_result* result);
/* Seeds in selection order; valid while the result lives. */
TCIM_API const uint32_t* tcim_result_seeds(const tcim_result* result);
TCIM_API void tcim_result_stats(const tcim_result* result, tcim_stats* out);
TCIM_API void tcim_result_free(tcim_result* result);

/* ---- baselines and oracles ---- */

typedef struct tcim_baseline_params {
  tcim_baseline algorithm;
  tcim_model model;
  size_t k;
  uint64_t simulations; /* r per spread evaluation; ignored by SingleDiscount */
  uint64_t seed;
  unsigned threads;
  int exact; /* nonzero: evaluate spreads exactly instead of by simulation (small graphs) */
} tcim_baseline_params;

typedef struct tcim_baseline_stats {
  double spread_estimate;
  uint64_t evaluations;
  uint64_t simulations_used;
  double wall_time_s;
} tcim_baseline_stats;

TCIM_API tcim_status tcim_run_baseline(const tcim_graph* graph, const uint32_t* seeds_a,
                                       size_t seeds_a_count, const tcim_baseline_params* params,
                                       tcim_baseline_result** out);
TCIM_API size_t tcim_baseline_seed_count(const tcim_baseline_result* result);
TCIM_API const uint32_t* tcim_baseline_seeds(const tcim_baseline_result* result);
TCIM_API void tcim_baseline_stats_get(const tcim_baseline_result* result, tcim_baseline_stats* out);
TCIM_API void tcim_baseline_result_free(tcim_baseline_result* result);

/* Mean B influence over `simulations` forward simulations. */
TCIM_API tcim_status tcim_estimate_sigma(const tcim_graph* graph, tcim_model model,
                                         const uint32_t* seeds_a, size_t seeds_a_count,
                                         const uint32_t* seeds_b, size_t seeds_b_count,
                                         uint64_t simulations, uint64_t seed, unsigned threads,
                                         double* out);

/* Exact B influence by live-edge enumeration (at most 20 edges with 0 < p < 1). */
TCIM_API tcim_status tcim_exact_sigma(const tcim_graph* graph, tcim_model model,
                                      const uint32_t* seeds_a, size_t seeds_a_count,
                                      const uint32_t* seeds_b, size_t seeds_b_count, double* out);

/* Simulations per evaluation that plain greedy needs for the same guarantee. */
TCIM_API tcim_status tcim_greedymc_min_r(size_t n, size_t k, double ell, double epsilon,
                                         double opt_lower, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* TCIM_TCIM_H */
