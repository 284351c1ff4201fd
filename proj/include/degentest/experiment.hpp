#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "degentest/family_io.hpp"
#include "degentest/instances.hpp"
#include "degentest/testers.hpp"

namespace degentest {

struct GeneratorSpec {
  std::string name;  // lb | two_hub | disjoint_copies | yes_forest | yes_bounded
  std::string base = "C4";
  std::vector<int> obstacle = {0, 2};
  std::string pattern = "K3";
  std::vector<std::string> family;
  double fraction = 0.3;
};

struct TesterTemplate {
  int q_prime = 1;
  int depth = 1;
  int samples = 1;
  int heavy_threshold = 1;
  std::vector<std::string> witnesses;
};

struct ExperimentGrid {
  std::vector<long long> n;       // instance sizes (lb: use m instead)
  std::vector<int> m;             // lb hub-set sizes; converted to n
  std::vector<std::uint64_t> budget;  // 0 = unlimited
  std::vector<int> q_prime, depth, samples, heavy_threshold;
};

struct ExperimentSpec {
  std::string name;
  GeneratorSpec generator;
  TesterTemplate tester;
  ExperimentGrid grid;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;
};

struct ResultRow {
  std::string experiment;
  long long n = 0;
  long long m_param = 0;
  std::uint64_t budget = 0;
  int trials = 0;
  int rejections = 0;
  double reject_rate = 0.0;
  double mean_queries = 0.0;
  std::uint64_t seed = 0;
  long long wall_ms = 0;
};

inline const char* kCsvHeader =
    "experiment,n,m_param,budget,trials,rejections,reject_rate,mean_queries,seed,wall_ms";

inline std::string csv_row(const ResultRow& row) {
  std::ostringstream os;
  os << row.experiment << ',' << row.n << ',' << row.m_param << ',' << row.budget << ','
     << row.trials << ',' << row.rejections << ',' << std::fixed << std::setprecision(6)
     << row.reject_rate << ',' << row.mean_queries << ',' << row.seed << ',' << row.wall_ms;
  return os.str();
}

inline void write_csv(std::span<const ResultRow> rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) os << csv_row(row) << '\n';
}

namespace detail {

inline int worker_count() {
  if (const char* env = std::getenv("DEGENTEST_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::uint64_t param_signature(const TesterTemplate& t, std::uint64_t budget, int q_prime,
                                     int depth, int samples, int heavy_threshold) {
  std::uint64_t sig = mix_seed(budget, static_cast<std::uint64_t>(q_prime));
  sig = mix_seed(sig, static_cast<std::uint64_t>(depth));
  sig = mix_seed(sig, static_cast<std::uint64_t>(samples));
  sig = mix_seed(sig, static_cast<std::uint64_t>(heavy_threshold));
  for (const auto& w : t.witnesses) {
    for (char c : w) sig = mix_seed(sig, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  }
  return sig;
}

}  // namespace detail

inline InstanceBundle instantiate_generator(const GeneratorSpec& gen, long long n, long long m,
                                            std::uint64_t seed,
                                            std::span<const NamedGraph> named = {}) {
  if (gen.name == "lb") {
    Graph base = resolve_pattern(gen.base, named);
    Obstacle obs{base, gen.obstacle};
    LBParams params;
    params.base = base;
    params.obstacle = obs;
    params.n = static_cast<int>(m > 0 ? lb_n_for_m(base, obs, static_cast<int>(m)) : n);
    params.seed = seed;
    return lb_construction(params);
  }
  if (gen.name == "two_hub") {
    Graph base = resolve_pattern(gen.base, named);
    Obstacle obs{base, gen.obstacle};
    return two_hub_instance(base, obs, static_cast<int>(n), seed);
  }
  if (gen.name == "disjoint_copies") {
    Graph pattern = resolve_pattern(gen.pattern, named);
    return disjoint_copies_instance(pattern, static_cast<int>(n), gen.fraction, seed);
  }
  if (gen.name == "yes_forest" || gen.name == "yes_bounded") {
    std::vector<Graph> family;
    for (const auto& name : gen.family) family.push_back(resolve_pattern(name, named));
    auto style = gen.name == "yes_forest" ? YesStyle::forest : YesStyle::bounded_degree_random;
    std::vector<std::string> names = gen.family;
    return yes_instance(family, static_cast<int>(n), style, seed, names);
  }
  throw ParseError("unknown generator: " + gen.name);
}

// Runs the full grid. Determinism: the instance seed is derived from the
// master seed and the grid index; trial seeds are derived from the master
// seed, the tester parameters and the trial index only, so grid points that
// differ only in n replay identical random-walk trajectories.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec,
                                             std::span<const NamedGraph> named = {}) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  ExperimentGrid grid = spec.grid;
  if (grid.n.empty() && grid.m.empty()) grid.n.push_back(0);
  if (grid.budget.empty()) grid.budget.push_back(0);
  if (grid.q_prime.empty()) grid.q_prime.push_back(spec.tester.q_prime);
  if (grid.depth.empty()) grid.depth.push_back(spec.tester.depth);
  if (grid.samples.empty()) grid.samples.push_back(spec.tester.samples);
  if (grid.heavy_threshold.empty()) grid.heavy_threshold.push_back(spec.tester.heavy_threshold);

  std::vector<Graph> witnesses;
  for (const auto& name : spec.tester.witnesses) witnesses.push_back(resolve_pattern(name, named));

  struct SizePoint {
    long long n = 0, m = 0;
  };
  std::vector<SizePoint> sizes;
  for (long long n : grid.n) sizes.push_back({n, 0});
  for (int m : grid.m) sizes.push_back({0, m});

  std::vector<ResultRow> rows;
  std::uint64_t grid_index = 0;
  for (const auto& size : sizes) {
    for (std::uint64_t budget : grid.budget) {
      for (int q_prime : grid.q_prime) {
        for (int depth : grid.depth) {
          for (int samples : grid.samples) {
            for (int heavy : grid.heavy_threshold) {
              const std::uint64_t instance_seed = mix_seed(spec.master_seed, grid_index);
              ++grid_index;
              ResultRow row;
              row.experiment = spec.name;
              row.budget = budget;
              row.seed = instance_seed;
              const auto started = std::chrono::steady_clock::now();
              try {
                InstanceBundle bundle =
                    instantiate_generator(spec.generator, size.n, size.m, instance_seed, named);
                row.n = bundle.graph.vertex_count();
                row.m_param = size.m;
                TesterConfig cfg;
                cfg.q_prime = q_prime;
                cfg.depth = depth;
                cfg.samples = samples;
                cfg.heavy_threshold = heavy;
                cfg.witness_family = witnesses;
                cfg.witness_names = spec.tester.witnesses;
                const std::uint64_t params_sig =
                    detail::param_signature(spec.tester, budget, q_prime, depth, samples, heavy);

                std::vector<char> rejected(static_cast<std::size_t>(spec.trials), 0);
                std::vector<std::uint64_t> queries(static_cast<std::size_t>(spec.trials), 0);
                std::atomic<int> next{0};
                auto work = [&]() {
                  for (;;) {
                    int trial = next.fetch_add(1);
                    if (trial >= spec.trials) return;
                    const std::uint64_t trial_seed =
                        mix_seed(mix_seed(spec.master_seed, params_sig),
                                 static_cast<std::uint64_t>(trial));
                    OracleHandle oracle(bundle.graph, mix_seed(trial_seed, 0xA5));
                    Verdict verdict =
                        canonical_tester(bundle.graph, oracle, cfg, mix_seed(trial_seed, 0x5A),
                                         budget == 0 ? kNoQueryLimit : budget);
                    rejected[static_cast<std::size_t>(trial)] = verdict.accept ? 0 : 1;
                    queries[static_cast<std::size_t>(trial)] = verdict.queries_used;
                  }
                };
                const int workers = std::min(detail::worker_count(), spec.trials);
                std::vector<std::thread> pool;
                for (int w = 1; w < workers; ++w) pool.emplace_back(work);
                work();
                for (auto& t : pool) t.join();

                row.trials = spec.trials;
                std::uint64_t total_queries = 0;
                for (int t = 0; t < spec.trials; ++t) {
                  row.rejections += rejected[static_cast<std::size_t>(t)];
                  total_queries += queries[static_cast<std::size_t>(t)];
                }
                row.reject_rate = static_cast<double>(row.rejections) / spec.trials;
                row.mean_queries = static_cast<double>(total_queries) / spec.trials;
              } catch (const std::exception&) {
                row.trials = 0;  // error row: the grid point aborted
              }
              row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return rows;
}

inline ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();
  const auto& gen = j.at("generator");
  spec.generator.name = gen.at("name").get<std::string>();
  if (gen.contains("base")) spec.generator.base = gen["base"].get<std::string>();
  if (gen.contains("obstacle")) spec.generator.obstacle = gen["obstacle"].get<std::vector<int>>();
  if (gen.contains("pattern")) spec.generator.pattern = gen["pattern"].get<std::string>();
  if (gen.contains("family")) spec.generator.family = gen["family"].get<std::vector<std::string>>();
  if (gen.contains("fraction")) spec.generator.fraction = gen["fraction"].get<double>();
  const auto& tester = j.at("tester");
  spec.tester.q_prime = tester.value("q_prime", 1);
  spec.tester.depth = tester.value("depth", 1);
  spec.tester.samples = tester.value("samples", 1);
  spec.tester.heavy_threshold = tester.value("heavy_threshold", 1);
  if (tester.contains("witnesses")) {
    spec.tester.witnesses = tester["witnesses"].get<std::vector<std::string>>();
  }
  if (j.contains("grid")) {
    const auto& grid = j["grid"];
    if (grid.contains("n")) spec.grid.n = grid["n"].get<std::vector<long long>>();
    if (grid.contains("m")) spec.grid.m = grid["m"].get<std::vector<int>>();
    if (grid.contains("budget")) spec.grid.budget = grid["budget"].get<std::vector<std::uint64_t>>();
    if (grid.contains("q_prime")) spec.grid.q_prime = grid["q_prime"].get<std::vector<int>>();
    if (grid.contains("depth")) spec.grid.depth = grid["depth"].get<std::vector<int>>();
    if (grid.contains("samples")) spec.grid.samples = grid["samples"].get<std::vector<int>>();
    if (grid.contains("heavy_threshold")) {
      spec.grid.heavy_threshold = grid["heavy_threshold"].get<std::vector<int>>();
    }
  }
  spec.trials = j.value("trials", 1);
  spec.master_seed = j.value("master_seed", 0ULL);
  spec.output_path = j.value("output_path", std::string{});
  return spec;
}

}  // namespace degentest
