#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "degentest/appearance.hpp"
#include "degentest/cactus.hpp"
#include "degentest/oracle.hpp"

namespace degentest {

struct TesterConfig {
  int q_prime = 1;          // number of sampled start vertices / trials
  int depth = 1;            // Bounded-BFS depth t
  int samples = 1;          // per-vertex neighbor samples s
  int heavy_threshold = 1;  // h
  std::vector<Graph> witness_family;
  std::vector<std::string> witness_names;  // optional, parallel to witness_family
};

inline void check_tester_config(const TesterConfig& cfg) {
  if (cfg.q_prime < 1 || cfg.depth < 1 || cfg.samples < 1 || cfg.heavy_threshold < 1) {
    throw std::invalid_argument("tester config fields must be positive");
  }
  for (const auto& w : cfg.witness_family) {
    if (w.vertex_count() > kMaxPatternVertices) {
      throw PatternTooLarge("witness pattern exceeds the exhaustive-search cap");
    }
  }
}

struct TesterWitness {
  int family_index = 0;
  Appearance appearance;  // mapped to host vertex ids
};

// One-sided verdict: a reject always carries a witness whose edges were all
// returned by oracle queries.
struct Verdict {
  bool accept = true;
  std::optional<TesterWitness> witness;
  std::uint64_t queries_used = 0;
};

namespace detail {

// Accumulates explored subgraphs into one compact graph over discovered
// vertices; every edge came out of the oracle.
class ExplorationUnion {
 public:
  void add_vertex(int host_v) {
    if (!dense_.contains(host_v)) {
      dense_.emplace(host_v, static_cast<int>(host_ids_.size()));
      host_ids_.push_back(host_v);
    }
  }

  void add_edge(int host_u, int host_v) {
    add_vertex(host_u);
    add_vertex(host_v);
    edge_set_.insert(normalized_edge(host_u, host_v));
  }

  void add(const ExploredSubgraph& explored) {
    for (int v : explored.vertices) add_vertex(v);
    for (auto [u, v] : explored.edges) add_edge(u, v);
  }

  Graph build() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_set_.size());
    for (auto [u, v] : edge_set_) {
      edges.push_back(normalized_edge(dense_.at(u), dense_.at(v)));
    }
    return Graph::from_edges(static_cast<int>(host_ids_.size()), edges);
  }

  int to_dense(int host_v) const { return dense_.at(host_v); }
  bool knows(int host_v) const { return dense_.contains(host_v); }
  int to_host(int dense_v) const { return host_ids_[static_cast<std::size_t>(dense_v)]; }
  std::size_t size() const { return host_ids_.size(); }

  Appearance to_host_appearance(const Appearance& local) const {
    Appearance out{local.pattern_size, local.mapping};
    for (int& v : out.mapping) v = to_host(v);
    return out;
  }

 private:
  std::unordered_map<int, int> dense_;
  std::vector<int> host_ids_;
  std::set<std::pair<int, int>> edge_set_;
};

inline std::optional<TesterWitness> scan_for_witness(const ExplorationUnion& exploration,
                                                     const std::vector<Graph>& family) {
  if (exploration.size() == 0) return std::nullopt;
  Graph view = exploration.build();
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto found = find_appearances(family[i], view, 1);
    if (!found.empty()) {
      return TesterWitness{static_cast<int>(i), exploration.to_host_appearance(found.front())};
    }
  }
  return std::nullopt;
}

// Structural one-sidedness: a reject without a host-valid witness is a bug.
inline Verdict make_verdict(const Graph& host, const Graph& witness_pattern,
                            std::optional<TesterWitness> witness, std::uint64_t queries) {
  if (witness) {
    if (!appearance_valid(witness_pattern, host, witness->appearance)) {
      throw std::logic_error("reject path produced an invalid witness");
    }
    return {false, std::move(witness), queries};
  }
  return {true, std::nullopt, queries};
}

}  // namespace detail

// Canonical tester: sample q' start vertices, Bounded-BFS from each, reject
// iff the union of explored subgraphs contains a witness-family member.
// Accepting every witness-free host is structural.
inline Verdict canonical_tester(const Graph& host, OracleHandle& oracle, const TesterConfig& cfg,
                                std::uint64_t seed, std::uint64_t budget = kNoQueryLimit) {
  check_tester_config(cfg);
  const std::uint64_t before = oracle.query_count();
  Rng sampler(seed);
  QueryBudget tracker{budget};
  detail::ExplorationUnion exploration;
  for (int i = 0; i < cfg.q_prime && tracker.remaining > 0; ++i) {
    int start = sampler.below(host.vertex_count());
    exploration.add(
        bounded_bfs(oracle, start, cfg.depth, cfg.samples, cfg.heavy_threshold, &tracker));
  }
  auto witness = detail::scan_for_witness(exploration, cfg.witness_family);
  const std::uint64_t used = oracle.query_count() - before;
  if (witness) {
    return detail::make_verdict(host, cfg.witness_family[static_cast<std::size_t>(witness->family_index)],
                                std::move(witness), used);
  }
  return {true, std::nullopt, used};
}

// Hub-assembly tester for the locked-tournament regime: walk to a vertex that
// samples as heavy, then repeatedly query it, mapping out the component
// closures hanging off it; reject iff the collected exploration assembles an
// h1-appearance through the common physical separator.
inline Verdict hub_assembly_tester(const Graph& host, OracleHandle& oracle, const Graph& h1,
                                   const Obstacle& obs, const TesterConfig& cfg, std::uint64_t seed,
                                   std::uint64_t budget = kNoQueryLimit) {
  check_tester_config(cfg);
  if (obs.pattern != h1 || !obstacle_valid(obs)) {
    throw std::invalid_argument("obstacle does not validate against h1");
  }
  const std::uint64_t before = oracle.query_count();
  Rng sampler(seed);
  QueryBudget tracker{budget};
  const std::vector<Graph> family{h1};

  for (int attempt = 0; attempt < cfg.q_prime && tracker.remaining > 0; ++attempt) {
    detail::ExplorationUnion exploration;
    int start = sampler.below(host.vertex_count());
    auto explored = bounded_bfs(oracle, start, cfg.depth, cfg.samples, cfg.heavy_threshold, &tracker);
    exploration.add(explored);

    // candidate hub roots: vertices whose samples revealed more than h
    // distinct neighbors (degrees are never observable directly)
    std::vector<std::pair<int, int>> hubs;
    for (auto [v, distinct] : explored.distinct_sampled) {
      if (distinct > cfg.heavy_threshold) hubs.emplace_back(-distinct, v);
    }
    std::sort(hubs.begin(), hubs.end());
    if (hubs.size() > 4) hubs.resize(4);

    for (auto [neg_distinct, hub] : hubs) {
      (void)neg_distinct;
      for (int round = 0; round < cfg.samples && tracker.remaining > 0; ++round) {
        if (!tracker.spend()) break;
        auto w = oracle.query(hub);
        if (!w) continue;
        exploration.add_edge(hub, *w);
        exploration.add(
            bounded_bfs(oracle, *w, cfg.depth, cfg.samples, cfg.heavy_threshold, &tracker));
      }
    }
    auto witness = detail::scan_for_witness(exploration, family);
    if (witness) {
      return detail::make_verdict(host, h1, std::move(witness), oracle.query_count() - before);
    }
  }
  return {true, std::nullopt, oracle.query_count() - before};
}

namespace detail {

struct PetalPlan {
  std::vector<std::vector<int>> closures;  // petal closures in embedding order
  std::vector<int> attach_vertex;          // cactus vertex shared with an earlier petal; -1 for first
};

// Orders the petals of a cactus representation along the petal tree so each
// one (after the first) attaches to an already-embedded articulation vertex.
inline PetalPlan plan_petals(const CactusRep& rep) {
  auto petals = s_components(rep.cactus, rep.articulation_set);
  PetalPlan plan;
  if (petals.empty()) return plan;
  const std::size_t count = petals.size();
  std::vector<char> placed(count, 0);
  std::vector<char> vertex_known(static_cast<std::size_t>(rep.cactus.vertex_count()), 0);

  plan.closures.push_back(petals[0].closure);
  plan.attach_vertex.push_back(-1);
  placed[0] = 1;
  for (int v : petals[0].closure) vertex_known[static_cast<std::size_t>(v)] = 1;

  for (std::size_t placed_count = 1; placed_count < count; ++placed_count) {
    bool progress = false;
    for (std::size_t p = 0; p < count && !progress; ++p) {
      if (placed[p]) continue;
      for (int v : petals[p].closure) {
        if (vertex_known[static_cast<std::size_t>(v)]) {
          plan.closures.push_back(petals[p].closure);
          plan.attach_vertex.push_back(v);
          placed[p] = 1;
          for (int w : petals[p].closure) vertex_known[static_cast<std::size_t>(w)] = 1;
          progress = true;
          break;
        }
      }
    }
    if (!progress) throw std::logic_error("cactus petals do not form a tree");
  }
  return plan;
}

}  // namespace detail

// Cactus-embedding tester: assemble an appearance of rep.cactus petal by
// petal. From each embedded articulation vertex it samples neighbors and runs
// Bounded-BFS looking for a fresh image of the next petal; a physical-vertex
// collision with the partial embedding aborts the attempt.
inline Verdict cactus_embedding_tester(const Graph& host, OracleHandle& oracle,
                                       const CactusRep& rep, const TesterConfig& cfg,
                                       std::uint64_t seed, std::uint64_t budget = kNoQueryLimit) {
  check_tester_config(cfg);
  if (!cactus_rep_valid(rep)) throw std::invalid_argument("cactus representation does not validate");
  const std::uint64_t before = oracle.query_count();
  Rng sampler(seed);
  QueryBudget tracker{budget};
  const detail::PetalPlan plan = detail::plan_petals(rep);
  if (plan.closures.empty()) return {true, std::nullopt, 0};

  for (int attempt = 0; attempt < cfg.q_prime && tracker.remaining > 0; ++attempt) {
    detail::ExplorationUnion exploration;
    int start = sampler.below(host.vertex_count());
    exploration.add(
        bounded_bfs(oracle, start, cfg.depth, cfg.samples, cfg.heavy_threshold, &tracker));

    auto first_closure = induced_subgraph(rep.cactus, plan.closures.front());
    Graph view = exploration.build();
    auto seeds = find_appearances(first_closure.graph, view, 16);

    for (const auto& seed_app : seeds) {
      // partial embedding: cactus vertex -> host vertex
      std::vector<int> embed(static_cast<std::size_t>(rep.cactus.vertex_count()), -1);
      for (std::size_t i = 0; i < first_closure.to_parent.size(); ++i) {
        embed[static_cast<std::size_t>(first_closure.to_parent[i])] =
            exploration.to_host(seed_app.mapping[i]);
      }
      bool aborted = false;
      for (std::size_t p = 1; p < plan.closures.size() && !aborted; ++p) {
        const int attach = plan.attach_vertex[p];
        const int hub = embed[static_cast<std::size_t>(attach)];
        for (int round = 0; round < cfg.samples && tracker.remaining > 0; ++round) {
          if (!tracker.spend()) break;
          auto w = oracle.query(hub);
          if (!w) continue;
          exploration.add_edge(hub, *w);
          exploration.add(
              bounded_bfs(oracle, *w, cfg.depth, cfg.samples, cfg.heavy_threshold, &tracker));
        }
        Graph local = exploration.build();
        auto closure = induced_subgraph(rep.cactus, plan.closures[p]);
        int attach_local = -1;
        for (std::size_t i = 0; i < closure.to_parent.size(); ++i) {
          if (closure.to_parent[i] == attach) attach_local = static_cast<int>(i);
        }
        std::vector<char> forbidden(local.vertex_count(), 0);
        for (int v : embed) {
          if (v >= 0 && v != hub && exploration.knows(v)) {
            forbidden[static_cast<std::size_t>(exploration.to_dense(v))] = 1;
          }
        }
        std::vector<std::pair<int, int>> anchors{{attach_local, exploration.to_dense(hub)}};
        auto extensions = find_appearances_anchored(closure.graph, local, anchors, 1, &forbidden);
        if (extensions.empty()) {
          aborted = true;  // no fresh petal image found within budget
          break;
        }
        for (std::size_t i = 0; i < closure.to_parent.size(); ++i) {
          embed[static_cast<std::size_t>(closure.to_parent[i])] =
              exploration.to_host(extensions.front().mapping[i]);
        }
      }
      if (!aborted) {
        Appearance full{rep.cactus.vertex_count(), embed};
        auto witness = TesterWitness{0, full};
        return detail::make_verdict(host, rep.cactus, std::move(witness),
                                    oracle.query_count() - before);
      }
    }
  }
  return {true, std::nullopt, oracle.query_count() - before};
}

}  // namespace degentest
