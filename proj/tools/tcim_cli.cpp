// Command-line front end over the tcim C library.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcim/tcim.h"

namespace {

using json = nlohmann::ordered_json;

// Raised for any failure; carries the process exit code.
struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(tcim_status status) {
  switch (status) {
    case TCIM_OK: return 0;
    case TCIM_ERR_INVALID_ARGUMENT: return 2;
    case TCIM_ERR_CONTRACT:
    case TCIM_ERR_LIMIT: return 3;
    case TCIM_ERR_IO:
    case TCIM_ERR_PARSE: return 4;
    default: return 1;
  }
}

void check(tcim_status status) {
  if (status != TCIM_OK) {
    throw Failure{exit_code_for(status),
                  std::string(tcim_status_name(status)) + ": " + tcim_last_error()};
  }
}

struct GraphDeleter {
  void operator()(tcim_graph* g) const { tcim_graph_free(g); }
};
using GraphPtr = std::unique_ptr<tcim_graph, GraphDeleter>;

struct ResultDeleter {
  void operator()(tcim_result* r) const { tcim_result_free(r); }
};
using ResultPtr = std::unique_ptr<tcim_result, ResultDeleter>;

struct BaselineDeleter {
  void operator()(tcim_baseline_result* r) const { tcim_baseline_result_free(r); }
};
using BaselinePtr = std::unique_ptr<tcim_baseline_result, BaselineDeleter>;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* model_name(tcim_model m) {
  switch (m) {
    case TCIM_MODEL_COICM: return "coicm";
    case TCIM_MODEL_DISTANCE: return "distance";
    case TCIM_MODEL_WAVE: return "wave";
  }
  return "?";
}

const std::map<std::string, tcim_model> kModels{
    {"coicm", TCIM_MODEL_COICM}, {"distance", TCIM_MODEL_DISTANCE}, {"wave", TCIM_MODEL_WAVE}};

const std::map<std::string, int> kAlgorithms{{"tcim", -1},
                                             {"greedymc", TCIM_BASELINE_GREEDYMC},
                                             {"celf", TCIM_BASELINE_CELF},
                                             {"celfpp", TCIM_BASELINE_CELFPP},
                                             {"singlediscount", TCIM_BASELINE_SINGLEDISCOUNT}};

// ---- option groups ----

struct GraphOptions {
  std::string path;
  bool undirected = false;
  std::string probabilities = "auto";

  void add(CLI::App& app) {
    app.add_option("--graph", path, "Edge list: one 'u v [p]' arc per line, '#' comments")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_flag("--undirected", undirected, "Treat every line as two opposite arcs");
    app.add_option("--prob", probabilities,
                   "Edge probabilities: auto (file column if present, else weighted IC), file, "
                   "weighted-ic (1/in-degree of the target), or uniform:P")
        ->capture_default_str();
  }

  GraphPtr load() const {
    tcim_graph* raw = nullptr;
    check(tcim_graph_load(path.c_str(), undirected ? 1 : 0, &raw));
    GraphPtr g(raw);
    if (probabilities == "weighted-ic" ||
        (probabilities == "auto" && !tcim_graph_has_probabilities(g.get()))) {
      check(tcim_graph_assign_weighted_ic(g.get()));
    } else if (probabilities.rfind("uniform:", 0) == 0) {
      double p = 0.0;
      try {
        p = std::stod(probabilities.substr(8));
      } catch (const std::exception&) {
        throw Failure{2, "bad --prob value: " + probabilities};
      }
      check(tcim_graph_assign_uniform(g.get(), p));
    } else if (probabilities == "file") {
      if (!tcim_graph_has_probabilities(g.get())) {
        throw Failure{3, "--prob file: the edge list has no probability column"};
      }
    } else if (probabilities != "auto") {
      throw Failure{2, "bad --prob value: " + probabilities};
    }
    return g;
  }
};

struct SeedAOptions {
  std::string file;
  std::size_t auto_count = 0;
  bool auto_set = false;
  CLI::Option* file_opt = nullptr;
  CLI::Option* auto_opt = nullptr;

  void add(CLI::App& app) {
    file_opt = app.add_option("--seed-a-file", file, "Opponent seeds S_A: whitespace-separated node ids")
                   ->check(CLI::ExistingFile);
    auto_opt = app.add_option("--seed-a-auto", auto_count,
                              "Opponent seeds S_A: the J seeds TCIM picks with S_A empty, "
                              "epsilon 0.5, ell 1 and the same model and --seed");
    file_opt->excludes(auto_opt);
  }
};

struct Common {
  tcim_model model = TCIM_MODEL_COICM;
  std::uint64_t seed = 0;
  std::uint64_t sims = 50000;
  unsigned threads = 1;
  std::string out = "-";
  std::string format = "json";

  void add(CLI::App& app, bool with_format = true) {
    app.add_option("--model", model, "Propagation model: coicm, distance or wave")
        ->transform(CLI::CheckedTransformer(kModels, CLI::ignore_case));
    app.add_option("--seed", seed, "RNG seed; every random draw derives from it")->capture_default_str();
    app.add_option("--sims", sims, "Forward simulations for the reported spread_mc (0 skips it)")
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for sampling and simulation")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_option("--out", out, "Output path, '-' for stdout")->capture_default_str();
    if (with_format) {
      app.add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
    }
  }
};

std::vector<std::uint32_t> read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{4, "cannot open " + path};
  std::vector<std::uint32_t> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok, &used);
        if (used != tok.size() || v > 0xffffffffULL) throw std::invalid_argument(tok);
        ids.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw Failure{4, path + ": line " + std::to_string(line_no) + ": bad node id '" + tok + "'"};
      }
    }
  }
  return ids;
}

std::vector<std::uint32_t> run_tcim_seeds(const tcim_graph* g, const std::vector<std::uint32_t>& seeds_a,
                                          const tcim_params& p, tcim_stats* stats = nullptr) {
  tcim_result* raw = nullptr;
  check(tcim_run(g, seeds_a.data(), seeds_a.size(), &p, &raw));
  ResultPtr r(raw);
  if (stats) tcim_result_stats(r.get(), stats);
  const std::uint32_t* s = tcim_result_seeds(r.get());
  return {s, s + tcim_result_seed_count(r.get())};
}

std::vector<std::uint32_t> auto_seeds(const tcim_graph* g, std::size_t count, tcim_model model,
                                      std::uint64_t seed, unsigned threads) {
  if (count == 0) return {};
  tcim_params p;
  tcim_params_default(&p);
  p.k = count;
  p.epsilon = 0.5;
  p.ell = 1.0;
  p.model = model;
  p.seed = seed;
  p.threads = threads;
  return run_tcim_seeds(g, {}, p);
}

std::vector<std::uint32_t> resolve_seed_a(const SeedAOptions& opt, const tcim_graph* g, const Common& c) {
  if (opt.file_opt->count() > 0) return read_seed_file(opt.file);
  if (opt.auto_opt->count() > 0) return auto_seeds(g, opt.auto_count, c.model, c.seed, c.threads);
  return {};
}

// spread_mc and its wall time; null when sims is 0.
std::pair<json, double> evaluate_spread(const tcim_graph* g, const Common& c,
                                        const std::vector<std::uint32_t>& seeds_a,
                                        const std::vector<std::uint32_t>& seeds_b) {
  if (c.sims == 0) return {nullptr, 0.0};
  const auto start = std::chrono::steady_clock::now();
  double v = 0.0;
  check(tcim_estimate_sigma(g, c.model, seeds_a.data(), seeds_a.size(), seeds_b.data(), seeds_b.size(),
                            c.sims, c.seed, c.threads, &v));
  return {v, seconds_since(start)};
}

// ---- output ----

const std::vector<std::string> kCsvColumns{
    "algorithm",      "model",         "k",
    "epsilon",        "ell",           "seed",
    "seed_a_size",    "seeds",         "theta",
    "lb_estimate",    "lb_refined",    "spread_estimate",
    "spread_mc",      "eval_sims",     "simulations_used",
    "min_r",          "instances_generated", "coins_total",
    "peak_memory_bytes", "estimate_s", "refine_s",
    "select_s",       "total_s",       "eval_s",
    "error"};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x.dump();
    return s;
  }
  return v.dump();
}

// Flattens a record into the stable CSV column order.
std::string csv_row(const json& rec) {
  std::string line;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    const std::string& col = kCsvColumns[i];
    json v = nullptr;
    if (col == "seed_a_size") {
      if (rec.contains("seed_a_size")) v = rec["seed_a_size"];
      else if (rec.contains("seed_a")) v = rec["seed_a"].size();
    } else if (rec.contains("timings") && rec["timings"].contains(col)) {
      v = rec["timings"][col];
    } else if (rec.contains(col)) {
      v = rec[col];
    }
    line += (i ? "," : "") + csv_cell(v);
  }
  return line;
}

std::string csv_header() {
  std::string line;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) line += (i ? "," : "") + kCsvColumns[i];
  return line;
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{4, "cannot write " + path};
  out << text;
  if (!out) throw Failure{4, "write failed: " + path};
}

void emit_records(const Common& c, const std::vector<json>& records, bool as_array) {
  if (c.format == "csv") {
    std::string text = csv_header() + "\n";
    for (const auto& r : records) text += csv_row(r) + "\n";
    emit(c.out, text);
  } else {
    const json doc = as_array ? json(records) : records.front();
    emit(c.out, doc.dump(2) + "\n");
  }
}

// ---- records ----

json tcim_record(const tcim_graph* g, const Common& c, const std::vector<std::uint32_t>& seeds_a,
                 std::size_t k, double epsilon, double ell) {
  tcim_params p;
  tcim_params_default(&p);
  p.k = k;
  p.epsilon = epsilon;
  p.ell = ell;
  p.model = c.model;
  p.seed = c.seed;
  p.threads = c.threads;
  tcim_stats st{};
  const std::vector<std::uint32_t> seeds = run_tcim_seeds(g, seeds_a, p, &st);
  const auto [spread_mc, eval_s] = evaluate_spread(g, c, seeds_a, seeds);
  json rec;
  rec["algorithm"] = "tcim";
  rec["model"] = model_name(c.model);
  rec["k"] = k;
  rec["epsilon"] = epsilon;
  rec["ell"] = ell;
  rec["seed"] = c.seed;
  rec["seed_a"] = seeds_a;
  rec["seeds"] = seeds;
  rec["theta"] = st.theta;
  rec["theta_prime"] = st.theta_prime;
  rec["ell_prime"] = st.ell_prime;
  rec["epsilon_prime"] = st.epsilon_prime;
  rec["estimate_rounds"] = st.estimate_rounds;
  rec["width_clamps"] = st.width_clamps;
  rec["lb_estimate"] = st.lb_estimate;
  rec["lb_refined"] = st.lb_refined;
  rec["spread_estimate"] = st.spread_estimate;
  rec["spread_mc"] = spread_mc;
  rec["eval_sims"] = c.sims;
  rec["simulations_used"] = 0;
  rec["instances_generated"] = st.instances_generated;
  rec["coins_total"] = st.coins_total;
  rec["peak_memory_bytes"] = st.peak_memory_bytes;
  rec["timings"] = {{"estimate_s", st.time_estimate_s},
                    {"refine_s", st.time_refine_s},
                    {"select_s", st.time_select_s},
                    {"total_s", st.time_total_s},
                    {"eval_s", eval_s}};
  return rec;
}

struct BaselineOptions {
  std::uint64_t r = 10000;
  bool exact = false;
  bool print_min_r = false;
  double epsilon = 0.1;
  double ell = 1.0;
};

json baseline_record(const tcim_graph* g, const Common& c, const std::vector<std::uint32_t>& seeds_a,
                     const std::string& algorithm, std::size_t k, const BaselineOptions& b) {
  tcim_baseline_params p{};
  p.algorithm = static_cast<tcim_baseline>(kAlgorithms.at(algorithm));
  p.model = c.model;
  p.k = k;
  p.simulations = b.r;
  p.seed = c.seed;
  p.threads = c.threads;
  p.exact = b.exact ? 1 : 0;
  tcim_baseline_result* raw = nullptr;
  check(tcim_run_baseline(g, seeds_a.data(), seeds_a.size(), &p, &raw));
  BaselinePtr res(raw);
  tcim_baseline_stats st{};
  tcim_baseline_stats_get(res.get(), &st);
  const std::uint32_t* s = tcim_baseline_seeds(res.get());
  const std::vector<std::uint32_t> seeds(s, s + tcim_baseline_seed_count(res.get()));
  const auto [spread_mc, eval_s] = evaluate_spread(g, c, seeds_a, seeds);

  json rec;
  rec["algorithm"] = algorithm;
  rec["model"] = model_name(c.model);
  rec["k"] = k;
  rec["epsilon"] = nullptr;
  rec["ell"] = nullptr;
  rec["seed"] = c.seed;
  rec["seed_a"] = seeds_a;
  rec["seeds"] = seeds;
  const bool simulated = algorithm != "singlediscount";
  rec["r"] = simulated ? json(b.r) : json(nullptr);
  rec["exact"] = b.exact;
  rec["spread_estimate"] = simulated ? json(st.spread_estimate) : json(nullptr);
  rec["spread_mc"] = spread_mc;
  rec["eval_sims"] = c.sims;
  rec["evaluations"] = st.evaluations;
  rec["simulations_used"] = st.simulations_used;
  if (b.print_min_r) {
    // OPT is unknown; the refined lower bound from a TCIM run stands in for it.
    tcim_params tp;
    tcim_params_default(&tp);
    tp.k = k;
    tp.epsilon = b.epsilon;
    tp.ell = b.ell;
    tp.model = c.model;
    tp.seed = c.seed;
    tp.threads = c.threads;
    tcim_stats ts{};
    run_tcim_seeds(g, seeds_a, tp, &ts);
    std::uint64_t min_r = 0;
    check(tcim_greedymc_min_r(tcim_graph_node_count(g), k, b.ell, b.epsilon, ts.lb_refined, &min_r));
    rec["epsilon"] = b.epsilon;
    rec["ell"] = b.ell;
    rec["min_r"] = min_r;
    rec["min_r_opt_lower"] = ts.lb_refined;
  }
  rec["timings"] = {{"total_s", st.wall_time_s}, {"eval_s", eval_s}};
  return rec;
}

const char* kRecordFields = R"(Output record fields (JSON keys; CSV uses the same names, flattening
timings.* into columns, seeds as space-separated ids and seed_a as seed_a_size;
fields an algorithm does not produce are null in JSON and empty in CSV):
  algorithm            tcim, greedymc, celf, celfpp or singlediscount
  model                coicm, distance or wave
  k, epsilon, ell      parameters used (epsilon/ell only where they apply)
  seed                 the --seed value
  seed_a               opponent seed set S_A
  seeds                chosen seed set S_B in selection order
  theta                RAPG instances used for node selection
  theta_prime          instances drawn to refine the lower bound
  ell_prime            ell + ln 3 / ln n
  epsilon_prime        accuracy used while refining the lower bound
  estimate_rounds      rounds run by the lower-bound estimation
  width_clamps         instances whose width exceeded m' and was clamped
  lb_estimate          estimated lower bound of OPT
  lb_refined           refined lower bound of OPT (never below lb_estimate)
  spread_estimate      TCIM: n * coverage / theta; greedy baselines: sum of
                       the winners' estimated marginal gains
  spread_mc            mean B influence over eval_sims forward simulations
  eval_sims            simulations behind spread_mc (--sims)
  r, exact             baselines: simulations per spread evaluation, exact mode
  evaluations          baselines: spread evaluations performed
  simulations_used     baselines: evaluations * r
  min_r                simulations greedy needs per evaluation for the same
                       guarantee, with OPT replaced by min_r_opt_lower
  min_r_opt_lower      lb_refined of a TCIM run with the same k, epsilon, ell
  instances_generated  RAPG instances drawn across all phases
  coins_total          edge coins flipped while sampling
  peak_memory_bytes    largest retained instance storage (node and edge slots)
  timings.estimate_s, timings.refine_s, timings.select_s, timings.total_s
                       wall seconds per phase and in total
  timings.eval_s       wall seconds spent computing spread_mc
  error                grid only: message of a failed row
  spread_mc (influence) the estimate for --seed-b-file
Exit codes: 0 success, 2 usage error, 3 contract violation, 4 I/O error, 1 internal error.)";

template <typename T>
std::vector<T> non_empty(const std::vector<T>& v, const char* name) {
  if (v.empty()) throw Failure{2, std::string(name) + " needs at least one value"};
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive influence maximization with RAPG sampling"};
  app.require_subcommand(1);
  app.footer(kRecordFields);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic edge list");
  std::string gen_kind = "kout";
  std::size_t gen_n = 0;
  double gen_param = 0.0;
  std::uint64_t gen_seed = 0;
  bool gen_wic = false;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "er (param = arc probability) or kout (param = out-degree)")
      ->check(CLI::IsMember({"er", "kout"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "Number of nodes")->required();
  gen->add_option("--param", gen_param, "Arc probability or out-degree")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_flag("--weighted-ic", gen_wic, "Write p = 1/in-degree(target) as a third column");
  gen->add_option("--out", gen_out, "Output edge-list path")->required();

  // select
  CLI::App* select = app.add_subcommand("select", "Run TCIM");
  GraphOptions sel_graph;
  SeedAOptions sel_a;
  Common sel_c;
  std::size_t sel_k = 1;
  double sel_eps = 0.1;
  double sel_ell = 1.0;
  sel_graph.add(*select);
  sel_a.add(*select);
  sel_c.add(*select);
  select->add_option("--k", sel_k, "Seed budget")->capture_default_str();
  select->add_option("--epsilon", sel_eps, "Accuracy in (0, 1]")->capture_default_str();
  select->add_option("--ell", sel_ell, "Confidence exponent (>= 0.5)")->capture_default_str();
  select->footer(kRecordFields);

  // baseline
  CLI::App* baseline = app.add_subcommand("baseline", "Run a comparison algorithm");
  GraphOptions base_graph;
  SeedAOptions base_a;
  Common base_c;
  std::string base_alg = "celf";
  std::size_t base_k = 1;
  BaselineOptions base_opts;
  base_graph.add(*baseline);
  base_a.add(*baseline);
  base_c.add(*baseline);
  baseline->add_option("--algorithm", base_alg, "greedymc, celf, celfpp or singlediscount")
      ->check(CLI::IsMember({"greedymc", "celf", "celfpp", "singlediscount"}))
      ->capture_default_str();
  baseline->add_option("--k", base_k, "Seed budget")->capture_default_str();
  baseline->add_option("--r", base_opts.r, "Simulations per spread evaluation")->capture_default_str();
  baseline->add_flag("--exact", base_opts.exact,
                     "Evaluate spreads exactly by live-edge enumeration (tiny graphs only)");
  baseline->add_flag("--print-min-r", base_opts.print_min_r,
                     "Also report the simulations greedy needs for the TCIM guarantee");
  baseline->add_option("--epsilon", base_opts.epsilon, "Accuracy used by --print-min-r")
      ->capture_default_str();
  baseline->add_option("--ell", base_opts.ell, "Confidence exponent used by --print-min-r")
      ->capture_default_str();
  baseline->footer(kRecordFields);

  // grid
  CLI::App* grid = app.add_subcommand("grid", "Sweep algorithms, models, k, epsilon and |S_A|");
  GraphOptions grid_graph;
  Common grid_c;
  grid_c.format = "csv";
  std::vector<std::string> grid_algs{"tcim"};
  std::vector<std::string> grid_models{"coicm"};
  std::vector<std::size_t> grid_k{1};
  std::vector<double> grid_eps{0.1};
  std::vector<std::size_t> grid_a{0};
  double grid_ell = 1.0;
  std::uint64_t grid_r = 10000;
  grid_graph.add(*grid);
  grid_c.add(*grid);
  grid->add_option("--algorithms", grid_algs, "Algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember({"tcim", "greedymc", "celf", "celfpp", "singlediscount"}));
  grid->add_option("--models", grid_models, "Models")->delimiter(',')->check(
      CLI::IsMember({"coicm", "distance", "wave"}));
  grid->add_option("--k", grid_k, "Seed budgets")->delimiter(',');
  grid->add_option("--epsilon", grid_eps, "Accuracies (TCIM rows)")->delimiter(',');
  grid->add_option("--seed-a-auto", grid_a, "Sizes of the automatically chosen S_A")->delimiter(',');
  grid->add_option("--ell", grid_ell, "Confidence exponent")->capture_default_str();
  grid->add_option("--r", grid_r, "Simulations per spread evaluation (baselines)")->capture_default_str();
  grid->footer(kRecordFields);

  // influence
  CLI::App* influence = app.add_subcommand("influence", "Estimate sigma(S_B | S_A) by simulation");
  GraphOptions inf_graph;
  SeedAOptions inf_a;
  Common inf_c;
  std::string inf_b;
  inf_graph.add(*influence);
  inf_a.add(*influence);
  inf_c.add(*influence);
  influence->add_option("--seed-b-file", inf_b, "Seed set S_B: whitespace-separated node ids")
      ->required()
      ->check(CLI::ExistingFile);
  influence->footer(kRecordFields);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      tcim_graph* raw = nullptr;
      check(tcim_graph_generate(gen_kind == "er" ? TCIM_GEN_ERDOS_RENYI : TCIM_GEN_RANDOM_KOUT, gen_n,
                                gen_param, gen_seed, &raw));
      GraphPtr g(raw);
      if (gen_wic) check(tcim_graph_assign_weighted_ic(g.get()));
      check(tcim_graph_write(g.get(), gen_out.c_str()));
    } else if (*select) {
      GraphPtr g = sel_graph.load();
      const auto seeds_a = resolve_seed_a(sel_a, g.get(), sel_c);
      emit_records(sel_c, {tcim_record(g.get(), sel_c, seeds_a, sel_k, sel_eps, sel_ell)}, false);
    } else if (*baseline) {
      GraphPtr g = base_graph.load();
      const auto seeds_a = resolve_seed_a(base_a, g.get(), base_c);
      emit_records(base_c, {baseline_record(g.get(), base_c, seeds_a, base_alg, base_k, base_opts)},
                   false);
    } else if (*grid) {
      GraphPtr g = grid_graph.load();
      std::vector<json> rows;
      for (const auto& model : non_empty(grid_models, "--models")) {
        Common c = grid_c;
        c.model = kModels.at(model);
        for (std::size_t a_size : non_empty(grid_a, "--seed-a-auto")) {
          std::vector<std::uint32_t> seeds_a;
          std::string a_error;
          try {
            seeds_a = auto_seeds(g.get(), a_size, c.model, c.seed, c.threads);
          } catch (const Failure& f) {
            a_error = f.message;
          }
          for (const auto& alg : non_empty(grid_algs, "--algorithms")) {
            for (std::size_t k : non_empty(grid_k, "--k")) {
              const std::vector<double> eps_list =
                  alg == "tcim" ? non_empty(grid_eps, "--epsilon") : std::vector<double>{0.0};
              for (double eps : eps_list) {
                json rec;
                try {
                  if (!a_error.empty()) throw Failure{3, "S_A generation failed: " + a_error};
                  if (alg == "tcim") {
                    rec = tcim_record(g.get(), c, seeds_a, k, eps, grid_ell);
                  } else {
                    BaselineOptions b;
                    b.r = grid_r;
                    rec = baseline_record(g.get(), c, seeds_a, alg, k, b);
                  }
                } catch (const Failure& f) {
                  rec = json::object();
                  rec["algorithm"] = alg;
                  rec["model"] = model;
                  rec["k"] = k;
                  rec["epsilon"] = alg == "tcim" ? json(eps) : json(nullptr);
                  rec["ell"] = alg == "tcim" ? json(grid_ell) : json(nullptr);
                  rec["seed"] = c.seed;
                  rec["seed_a_size"] = a_size;
                  rec["error"] = f.message;
                }
                rows.push_back(std::move(rec));
              }
            }
          }
        }
      }
      emit_records(grid_c, rows, true);
    } else if (*influence) {
      GraphPtr g = inf_graph.load();
      const auto seeds_a = resolve_seed_a(inf_a, g.get(), inf_c);
      const auto seeds_b = read_seed_file(inf_b);
      Common c = inf_c;
      if (c.sims == 0) throw Failure{2, "--sims must be positive for influence"};
      const auto [spread_mc, eval_s] = evaluate_spread(g.get(), c, seeds_a, seeds_b);
      json rec;
      rec["algorithm"] = nullptr;
      rec["model"] = model_name(c.model);
      rec["seed"] = c.seed;
      rec["seed_a"] = seeds_a;
      rec["seeds"] = seeds_b;
      rec["spread_mc"] = spread_mc;
      rec["eval_sims"] = c.sims;
      rec["timings"] = {{"eval_s", eval_s}};
      emit_records(c, {rec}, false);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return 0;
}
