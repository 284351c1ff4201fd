// degentest: testability characterization, adversarial instance generation,
// oracle testers and experiment orchestration for forbidden-subgraph freeness
// on bounded-degeneracy graphs.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "degentest/degeneracy.hpp"
#include "degentest/diagnostics.hpp"
#include "degentest/experiment.hpp"
#include "degentest/report.hpp"

namespace {

constexpr const char* kVersion = "degentest 1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitReject = 3;

using namespace degentest;

struct CommonState {
  std::uint64_t seed = 0;
  std::string family_path;
  std::vector<NamedGraph> family;

  void load_family() {
    if (!family_path.empty()) family = read_family_file(family_path);
  }
};

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

Obstacle parse_obstacle(const Graph& base, const std::string& csv) {
  Obstacle obs;
  obs.pattern = base;
  for (const auto& token : split_names(csv)) obs.s_set.push_back(std::stoi(token));
  std::sort(obs.s_set.begin(), obs.s_set.end());
  if (!obstacle_valid(obs)) throw ParseError("obstacle " + csv + " does not validate");
  return obs;
}

TesterConfig load_config(const std::string& config_path, const std::string& witness_csv,
                         std::optional<int> q_prime, std::optional<int> depth,
                         std::optional<int> samples, std::optional<int> heavy,
                         std::optional<std::uint64_t>& seed_out, const CommonState& state) {
  TesterConfig cfg;
  std::vector<std::string> witness_names;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open " + config_path);
    json j = json::parse(in, nullptr, true, true);
    cfg.q_prime = j.value("q_prime", 1);
    cfg.depth = j.value("depth", 1);
    cfg.samples = j.value("samples", 1);
    cfg.heavy_threshold = j.value("heavy_threshold", 1);
    if (j.contains("witnesses")) witness_names = j["witnesses"].get<std::vector<std::string>>();
    if (j.contains("seed")) seed_out = j["seed"].get<std::uint64_t>();
  }
  if (!witness_csv.empty()) witness_names = split_names(witness_csv);
  if (q_prime) cfg.q_prime = *q_prime;
  if (depth) cfg.depth = *depth;
  if (samples) cfg.samples = *samples;
  if (heavy) cfg.heavy_threshold = *heavy;
  for (const auto& name : witness_names) {
    cfg.witness_family.push_back(resolve_pattern(name, state.family));
    cfg.witness_names.push_back(name);
  }
  return cfg;
}

int run_decide(const std::string& path, const std::string& json_out) {
  auto family = read_family_file(path);
  std::vector<Graph> graphs;
  std::vector<std::string> names;
  for (const auto& entry : family) {
    graphs.push_back(entry.graph);
    names.push_back(entry.name);
  }
  auto verdict = family_testable(graphs);
  print_verdict_report(verdict, names, std::cout);
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw ParseError("cannot write " + json_out);
    out << verdict_to_json(verdict, names).dump(2) << '\n';
  }
  return verdict.testable ? kExitOk : kExitReject;
}

int run_generate(const CommonState& state, const std::string& generator, const std::string& base,
                 const std::string& obstacle_csv, const std::string& pattern, long long n,
                 long long m, double fraction, const std::string& family_csv,
                 const std::string& style, const std::string& output) {
  GeneratorSpec gen;
  gen.name = generator;
  gen.base = base;
  if (!obstacle_csv.empty()) {
    gen.obstacle.clear();
    for (const auto& token : split_names(obstacle_csv)) gen.obstacle.push_back(std::stoi(token));
  }
  gen.pattern = pattern;
  gen.fraction = fraction;
  gen.family = split_names(family_csv);
  if (generator == "yes") gen.name = style == "forest" ? "yes_forest" : "yes_bounded";
  auto bundle = instantiate_generator(gen, n, m, state.seed, state.family);
  write_graph_file(bundle.graph, output);
  std::ofstream sidecar(output + ".json");
  if (!sidecar) throw ParseError("cannot write " + output + ".json");
  sidecar << bundle_sidecar_json(bundle).dump(2) << '\n';
  std::cout << "wrote " << output << " (n=" << bundle.graph.vertex_count()
            << ", m=" << bundle.graph.edge_count() << ") and " << output << ".json\n";
  return kExitOk;
}

int run_test(CommonState& state, const std::string& graph_path, const std::string& tester,
             const std::string& config_path, const std::string& witness_csv,
             std::optional<int> q_prime, std::optional<int> depth, std::optional<int> samples,
             std::optional<int> heavy, std::uint64_t budget, const std::string& base_name,
             const std::string& obstacle_csv, const std::string& cactus_name) {
  Graph host = read_graph_file(graph_path);
  std::optional<std::uint64_t> config_seed;
  TesterConfig cfg =
      load_config(config_path, witness_csv, q_prime, depth, samples, heavy, config_seed, state);
  std::uint64_t seed = config_seed.value_or(state.seed);
  OracleHandle oracle(host, mix_seed(seed, 0xA5));
  Verdict verdict;
  if (tester == "canonical") {
    if (cfg.witness_family.empty()) throw ParseError("canonical tester needs --witnesses");
    verdict = canonical_tester(host, oracle, cfg, mix_seed(seed, 0x5A),
                               budget == 0 ? kNoQueryLimit : budget);
  } else if (tester == "hub") {
    Graph base = resolve_pattern(base_name, state.family);
    Obstacle obs = parse_obstacle(base, obstacle_csv);
    verdict = hub_assembly_tester(host, oracle, base, obs, cfg, mix_seed(seed, 0x5A),
                                  budget == 0 ? kNoQueryLimit : budget);
  } else if (tester == "cactus") {
    Graph base = resolve_pattern(base_name, state.family);
    Obstacle obs = parse_obstacle(base, obstacle_csv);
    Graph cactus = resolve_pattern(cactus_name, state.family);
    auto reps = cactus_reps(cactus, base, obs, 1);
    if (reps.empty()) throw ParseError(cactus_name + " admits no cactus representation");
    verdict = cactus_embedding_tester(host, oracle, reps.front(), cfg, mix_seed(seed, 0x5A),
                                      budget == 0 ? kNoQueryLimit : budget);
  } else {
    throw ParseError("unknown tester: " + tester);
  }
  std::cout << (verdict.accept ? "accept" : "reject") << " queries=" << verdict.queries_used;
  if (verdict.witness) {
    std::cout << " witness_index=" << verdict.witness->family_index << " witness_vertices=";
    for (std::size_t i = 0; i < verdict.witness->appearance.mapping.size(); ++i) {
      std::cout << (i ? "," : "") << verdict.witness->appearance.mapping[i];
    }
  }
  std::cout << '\n';
  return verdict.accept ? kExitOk : kExitReject;
}

int run_analyze(CommonState& state, const std::string& graph_path, const std::string& pattern_name,
                const std::string& obstacle_csv, int h, double delta, double gamma, int p,
                const std::string& json_out) {
  Graph host = read_graph_file(graph_path);
  Graph pattern = resolve_pattern(pattern_name, state.family);
  Obstacle obs = obstacle_csv.empty() ? obstacles(pattern).at(0) : parse_obstacle(pattern, obstacle_csv);

  std::cout << "packing...\n";
  Packing packing = greedy_packing(pattern, host, state.seed);
  std::cout << "  greedy packing size " << packing.members.size() << '\n';
  Packing good = delta_good_filter(host, packing, h, delta);
  std::cout << "  delta-good members  " << good.members.size() << " (delta=" << delta << ")\n";
  auto rp = role_preserving_extract(host, good, obs, h, 64, mix_seed(state.seed, 1));
  std::cout << "  role-preserving     " << rp.packing.members.size() << '\n';
  auto refined = gamma_good_refine(host, rp, gamma);
  std::cout << "  gamma-good          " << refined.packing.members.size() << " (gamma=" << gamma
            << ")\n";
  auto digraph = dependency_digraph(refined, gamma);
  print_digraph(digraph, std::cout);
  auto prune = iterative_prune(host, refined, gamma, p);
  print_prune_trace(prune, std::cout);
  if (!json_out.empty()) {
    json j;
    j["packing_size"] = packing.members.size();
    j["delta_good_size"] = good.members.size();
    j["role_preserving_size"] = rp.packing.members.size();
    j["gamma_good_size"] = refined.packing.members.size();
    j["digraph"] = digraph_to_json(digraph);
    j["prune"] = prune_to_json(prune);
    std::ofstream out(json_out);
    if (!out) throw ParseError("cannot write " + json_out);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int run_experiment_cmd(CommonState& state, const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) throw ParseError("cannot open " + spec_path);
  json j = json::parse(in, nullptr, true, true);
  auto spec = experiment_spec_from_json(j);
  if (state.seed != 0) spec.master_seed = state.seed;
  auto rows = run_experiment(spec, state.family);
  if (spec.output_path.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(spec.output_path);
    if (!out) throw ParseError("cannot write " + spec.output_path);
    write_csv(rows, out);
    std::cout << "wrote " << rows.size() << " rows to " << spec.output_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forbidden-subgraph freeness testing on bounded-degeneracy graphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonState state;
  app.add_option("--seed", state.seed, "master seed for all randomized steps");
  app.add_option("--family", state.family_path, "family file for pattern name resolution");

  auto* decide = app.add_subcommand("decide", "decide one-sided testability of a family file");
  std::string decide_path, decide_json;
  decide->add_option("family-file", decide_path)->required();
  decide->add_option("--json", decide_json, "write the machine-readable verdict here");

  auto* generate = app.add_subcommand("generate", "generate an instance with ground truth");
  std::string gen_name, gen_base = "C4", gen_obs = "0,2", gen_pattern = "K3", gen_family, gen_style = "forest", gen_out;
  long long gen_n = 0, gen_m = 0;
  double gen_fraction = 0.3;
  generate->add_option("generator", gen_name, "lb | two_hub | disjoint_copies | yes")->required();
  generate->add_option("-o,--output", gen_out)->required();
  generate->add_option("--base", gen_base, "base pattern name (lb, two_hub)");
  generate->add_option("--obstacle", gen_obs, "comma-separated obstacle vertices");
  generate->add_option("--pattern", gen_pattern, "pattern name (disjoint_copies)");
  generate->add_option("--n", gen_n, "target vertex count");
  generate->add_option("--m", gen_m, "hub-set size (lb only; overrides --n)");
  generate->add_option("--fraction", gen_fraction, "planted fraction (disjoint_copies)");
  generate->add_option("--members", gen_family, "comma-separated family names (yes)");
  generate->add_option("--style", gen_style, "forest | bounded_degree_random (yes)");

  auto* test = app.add_subcommand("test", "run one tester on a graph file");
  std::string test_graph, test_tester = "canonical", test_config, test_witnesses, test_base = "C4",
              test_obs = "0,2", test_cactus = "ST10";
  std::optional<int> test_qprime, test_depth, test_samples, test_heavy;
  std::uint64_t test_budget = 0;
  test->add_option("graph", test_graph)->required();
  test->add_option("--tester", test_tester, "canonical | hub | cactus");
  test->add_option("--config", test_config, "JSON tester config");
  test->add_option("--witnesses", test_witnesses, "comma-separated witness names");
  test->add_option("--q-prime", test_qprime);
  test->add_option("--depth", test_depth);
  test->add_option("--samples", test_samples);
  test->add_option("--heavy-threshold", test_heavy);
  test->add_option("--budget", test_budget, "total query budget (0 = unlimited)");
  test->add_option("--base", test_base, "base pattern (hub, cactus)");
  test->add_option("--obstacle", test_obs, "obstacle of the base (hub, cactus)");
  test->add_option("--cactus", test_cactus, "cactus pattern name (cactus)");

  auto* analyze = app.add_subcommand("analyze", "full-information diagnostics report");
  std::string an_graph, an_pattern = "C4", an_obs, an_json;
  int an_h = 10, an_p = 2;
  double an_delta = 0.05, an_gamma = 0.05;
  analyze->add_option("graph", an_graph)->required();
  analyze->add_option("--pattern", an_pattern)->required();
  analyze->add_option("--obstacle", an_obs, "defaults to the first obstacle of the pattern");
  analyze->add_option("--heavy", an_h, "heavy threshold");
  analyze->add_option("--delta", an_delta);
  analyze->add_option("--gamma", an_gamma);
  analyze->add_option("--p", an_p, "degeneracy bound used by the prune threshold");
  analyze->add_option("--json", an_json, "write the structured report here");

  auto* experiment = app.add_subcommand("experiment", "run an experiment spec over its grid");
  std::string exp_spec;
  experiment->add_option("spec-file", exp_spec)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    state.load_family();
    if (*decide) return run_decide(decide_path, decide_json);
    if (*generate) {
      return run_generate(state, gen_name, gen_base, gen_obs, gen_pattern, gen_n, gen_m,
                          gen_fraction, gen_family, gen_style, gen_out);
    }
    if (*test) {
      return run_test(state, test_graph, test_tester, test_config, test_witnesses, test_qprime,
                      test_depth, test_samples, test_heavy, test_budget, test_base, test_obs,
                      test_cactus);
    }
    if (*analyze) {
      return run_analyze(state, an_graph, an_pattern, an_obs, an_h, an_delta, an_gamma, an_p,
                         an_json);
    }
    if (*experiment) return run_experiment_cmd(state, exp_spec);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
