#pragma once

#include <optional>
#include <span>
#include <vector>

#include "degentest/obstacles.hpp"
#include "degentest/partition.hpp"

namespace degentest {

// Witness that `cactus` is a cactus with respect to (base, s_set): role_map
// is a homomorphism into the base, articulation_set is a set L of cactus
// articulation points with roles inside s_set, and every L-component closure
// embeds into a single S-component closure of the base.
struct CactusRep {
  Graph cactus;
  Graph base;
  std::vector<int> s_set;
  std::vector<int> role_map;          // V(cactus) -> V(base)
  std::vector<int> articulation_set;  // L, sorted
};

namespace detail {

struct PetalContext {
  std::vector<std::vector<int>> closures;          // petal closures, vertex lists
  std::vector<std::vector<int>> petals_of_vertex;  // cactus vertex -> petal ids
  std::vector<int> base_component_of;              // base vertex -> component id, -1 for S
};

inline PetalContext make_petal_context(const Graph& cactus, std::span<const int> art_set,
                                       const Graph& base, std::span<const int> s_set) {
  PetalContext ctx;
  auto petals = s_components(cactus, art_set);
  ctx.petals_of_vertex.assign(static_cast<std::size_t>(cactus.vertex_count()), {});
  for (std::size_t p = 0; p < petals.size(); ++p) {
    ctx.closures.push_back(petals[p].closure);
    for (int v : petals[p].closure) {
      ctx.petals_of_vertex[static_cast<std::size_t>(v)].push_back(static_cast<int>(p));
    }
  }
  ctx.base_component_of.assign(static_cast<std::size_t>(base.vertex_count()), -1);
  auto comps = s_components(base, s_set);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c].component) {
      ctx.base_component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }
  return ctx;
}

// Backtracking enumeration of role homomorphisms for a fixed articulation set.
// Enforces: edges map to base edges; L maps into S; the map is injective on
// every petal closure and sends each closure into a single S-component plus S;
// roles in `unique_roles` are used at most once overall.
class CactusSearch {
 public:
  CactusSearch(const Graph& cactus, const Graph& base, std::span<const int> s_set,
               std::span<const int> art_set, std::span<const int> unique_roles,
               std::size_t max_results)
      : cactus_(cactus),
        base_(base),
        s_set_(s_set.begin(), s_set.end()),
        art_set_(art_set.begin(), art_set.end()),
        max_results_(max_results),
        ctx_(make_petal_context(cactus, art_set, base, s_set)) {
    in_s_.assign(static_cast<std::size_t>(base.vertex_count()), 0);
    for (int s : s_set_) in_s_[static_cast<std::size_t>(s)] = 1;
    in_l_.assign(static_cast<std::size_t>(cactus.vertex_count()), 0);
    for (int v : art_set_) in_l_[static_cast<std::size_t>(v)] = 1;
    unique_cap_.assign(static_cast<std::size_t>(base.vertex_count()), 0);
    for (int s : unique_roles) unique_cap_[static_cast<std::size_t>(s)] = 1;
    petal_used_.assign(ctx_.closures.size(), {});
    petal_component_.assign(ctx_.closures.size(), -1);
    unique_count_.assign(static_cast<std::size_t>(base.vertex_count()), 0);
  }

  std::vector<CactusRep> run() {
    const int k = cactus_.vertex_count();
    mapping_.assign(static_cast<std::size_t>(k), -1);
    order_ = match_order(cactus_);
    earlier_.assign(static_cast<std::size_t>(k), {});
    std::vector<int> pos(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
    for (int v = 0; v < k; ++v) {
      for (int w : cactus_.neighbors(v)) {
        if (pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(v)]) {
          earlier_[static_cast<std::size_t>(v)].push_back(w);
        }
      }
    }
    descend(0);
    return std::move(results_);
  }

 private:
  bool feasible(int pv, int bv) {
    if (in_l_[static_cast<std::size_t>(pv)] && !in_s_[static_cast<std::size_t>(bv)]) return false;
    if (unique_cap_[static_cast<std::size_t>(bv)] && unique_count_[static_cast<std::size_t>(bv)] > 0) {
      return false;
    }
    for (int w : earlier_[static_cast<std::size_t>(pv)]) {
      if (!base_.has_edge(bv, mapping_[static_cast<std::size_t>(w)])) return false;
    }
    for (int p : ctx_.petals_of_vertex[static_cast<std::size_t>(pv)]) {
      const auto& used = petal_used_[static_cast<std::size_t>(p)];
      if (std::find(used.begin(), used.end(), bv) != used.end()) return false;
      if (!in_s_[static_cast<std::size_t>(bv)]) {
        int comp = ctx_.base_component_of[static_cast<std::size_t>(bv)];
        int cur = petal_component_[static_cast<std::size_t>(p)];
        if (cur >= 0 && cur != comp) return false;
      }
    }
    return true;
  }

  bool descend(int depth) {
    if (depth == cactus_.vertex_count()) {
      CactusRep rep{cactus_, base_, s_set_, mapping_, art_set_};
      results_.push_back(std::move(rep));
      return results_.size() < max_results_;
    }
    const int pv = order_[static_cast<std::size_t>(depth)];
    const std::vector<int>* candidates = nullptr;
    std::vector<int> all;
    if (in_l_[static_cast<std::size_t>(pv)]) {
      candidates = &s_set_;
    } else if (!earlier_[static_cast<std::size_t>(pv)].empty()) {
      candidates = &base_.neighbors(mapping_[static_cast<std::size_t>(
          earlier_[static_cast<std::size_t>(pv)].front())]);
    } else {
      all.resize(static_cast<std::size_t>(base_.vertex_count()));
      for (int v = 0; v < base_.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
      candidates = &all;
    }
    for (int bv : *candidates) {
      if (!feasible(pv, bv)) continue;
      mapping_[static_cast<std::size_t>(pv)] = bv;
      std::vector<int> comp_set_petals;
      for (int p : ctx_.petals_of_vertex[static_cast<std::size_t>(pv)]) {
        petal_used_[static_cast<std::size_t>(p)].push_back(bv);
        if (!in_s_[static_cast<std::size_t>(bv)] && petal_component_[static_cast<std::size_t>(p)] < 0) {
          petal_component_[static_cast<std::size_t>(p)] =
              ctx_.base_component_of[static_cast<std::size_t>(bv)];
          comp_set_petals.push_back(p);
        }
      }
      if (unique_cap_[static_cast<std::size_t>(bv)]) ++unique_count_[static_cast<std::size_t>(bv)];
      bool keep_going = descend(depth + 1);
      if (unique_cap_[static_cast<std::size_t>(bv)]) --unique_count_[static_cast<std::size_t>(bv)];
      for (int p : ctx_.petals_of_vertex[static_cast<std::size_t>(pv)]) {
        petal_used_[static_cast<std::size_t>(p)].pop_back();
      }
      for (int p : comp_set_petals) petal_component_[static_cast<std::size_t>(p)] = -1;
      mapping_[static_cast<std::size_t>(pv)] = -1;
      if (!keep_going) return false;
    }
    return true;
  }

  const Graph& cactus_;
  const Graph& base_;
  std::vector<int> s_set_;
  std::vector<int> art_set_;
  std::size_t max_results_;
  PetalContext ctx_;
  std::vector<char> in_s_, in_l_;
  std::vector<char> unique_cap_;
  std::vector<int> unique_count_;
  std::vector<std::vector<int>> petal_used_;
  std::vector<int> petal_component_;
  std::vector<int> mapping_;
  std::vector<int> order_;
  std::vector<std::vector<int>> earlier_;
  std::vector<CactusRep> results_;
};

inline void check_cactus_inputs(const Graph& h, const Graph& base, const Obstacle& obs) {
  if (h.vertex_count() > kMaxPatternVertices || base.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  if (!is_connected(h)) throw DisconnectedPattern("cactus candidate must be connected");
  if (obs.pattern != base) throw std::invalid_argument("obstacle does not belong to the base");
}

}  // namespace detail

inline bool cactus_rep_valid(const CactusRep& rep) {
  const int k = rep.cactus.vertex_count();
  if (static_cast<int>(rep.role_map.size()) != k) return false;
  for (int bv : rep.role_map) {
    if (bv < 0 || bv >= rep.base.vertex_count()) return false;
  }
  // homomorphism
  for (auto [a, b] : rep.cactus.edges()) {
    if (!rep.base.has_edge(rep.role_map[static_cast<std::size_t>(a)],
                           rep.role_map[static_cast<std::size_t>(b)])) {
      return false;
    }
  }
  // articulation set with roles inside S
  auto cuts = articulation_points_of(rep.cactus);
  for (int v : rep.articulation_set) {
    if (std::find(cuts.begin(), cuts.end(), v) == cuts.end()) return false;
    int role = rep.role_map[static_cast<std::size_t>(v)];
    if (std::find(rep.s_set.begin(), rep.s_set.end(), role) == rep.s_set.end()) return false;
  }
  // each petal closure is isomorphic to a subgraph of some S-component closure
  auto petals = s_components(rep.cactus, rep.articulation_set);
  auto comps = s_components(rep.base, rep.s_set);
  for (const auto& petal : petals) {
    auto sub = induced_subgraph(rep.cactus, petal.closure);
    bool embeds = false;
    for (const auto& comp : comps) {
      auto closure_graph = induced_subgraph(rep.base, comp.closure);
      if (!find_appearances(sub.graph, closure_graph.graph, 1).empty()) {
        embeds = true;
        break;
      }
    }
    if (!embeds) return false;
  }
  return true;
}

// Enumerates (role_map, articulation_set) pairs witnessing that h is a cactus
// with respect to (base, obs). Articulation sets range over all subsets of
// h's articulation points, smallest first.
inline std::vector<CactusRep> cactus_reps(const Graph& h, const Graph& base, const Obstacle& obs,
                                          std::size_t max_count) {
  detail::check_cactus_inputs(h, base, obs);
  std::vector<CactusRep> out;
  if (max_count == 0) return out;
  const std::vector<int> cuts = articulation_points_of(h);
  const int a = static_cast<int>(cuts.size());
  for (int size = 0; size <= a && out.size() < max_count; ++size) {
    detail::for_each_combination(a, size, [&](const std::vector<int>& idx) {
      std::vector<int> l_set;
      for (int i : idx) l_set.push_back(cuts[static_cast<std::size_t>(i)]);
      detail::CactusSearch search(h, base, obs.s_set, l_set, {}, max_count - out.size());
      for (auto& rep : search.run()) out.push_back(std::move(rep));
      return out.size() < max_count;
    });
  }
  return out;
}

// Sentinel check: does hj admit a cactus representation with respect to
// (hi, obs) in which every role of s_prime is used at most once?
inline std::pair<bool, std::optional<CactusRep>> is_sentinel(const Graph& hj, const Graph& hi,
                                                             const Obstacle& obs,
                                                             std::span<const int> s_prime) {
  detail::check_cactus_inputs(hj, hi, obs);
  if (s_prime.size() + 2 != obs.s_set.size()) {
    throw BadSPrime("s_prime must have |S| - 2 vertices");
  }
  for (int s : s_prime) {
    if (std::find(obs.s_set.begin(), obs.s_set.end(), s) == obs.s_set.end()) {
      throw BadSPrime("s_prime must be a subset of the obstacle");
    }
  }
  const std::vector<int> cuts = articulation_points_of(hj);
  const int a = static_cast<int>(cuts.size());
  std::optional<CactusRep> witness;
  for (int size = 0; size <= a && !witness; ++size) {
    detail::for_each_combination(a, size, [&](const std::vector<int>& idx) {
      std::vector<int> l_set;
      for (int i : idx) l_set.push_back(cuts[static_cast<std::size_t>(i)]);
      detail::CactusSearch search(hj, hi, obs.s_set, l_set, s_prime, 1);
      auto reps = search.run();
      if (!reps.empty()) {
        witness = std::move(reps.front());
        return false;
      }
      return true;
    });
  }
  return {witness.has_value(), std::move(witness)};
}

// Certificate that a pattern (or family) is non-testable: an obstacle in a
// 2-block together with the role subset no sentinel could cover.
struct ObstacleWitness {
  int pattern_index = 0;
  std::vector<int> block_vertices;  // in pattern vertex ids
  Obstacle obstacle;                // pattern = induced block, local ids
  std::vector<int> s_set_in_pattern;
  std::vector<int> s_prime_in_pattern;
};

struct SentinelEntry {
  int pattern_index = 0;
  std::vector<int> block_vertices;
  Obstacle obstacle;
  std::vector<int> s_set_in_pattern;
  std::vector<int> s_prime_in_pattern;
  int sentinel_index = 0;
  CactusRep rep;
};

struct TestabilityVerdict {
  bool testable = false;
  std::vector<ObstacleWitness> witnesses;
  std::vector<SentinelEntry> sentinel_table;
};

namespace detail {

inline void check_member(const Graph& h) {
  if (h.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  if (!is_connected(h)) throw DisconnectedPattern("pattern must be connected");
}

template <typename Fn>
inline void for_each_block_obstacle(const Graph& h, Fn&& fn) {
  auto decomposition = block_decomposition(h);
  for (const auto& block : decomposition.blocks) {
    auto sub = induced_subgraph(h, block);
    for (auto& obs : obstacles(sub.graph)) {
      fn(block, sub, obs);
    }
  }
}

}  // namespace detail

// Testability of a single connected pattern: testable iff no 2-block has an
// obstacle. A non-testable verdict carries the first obstacle found.
inline TestabilityVerdict is_testable(const Graph& h) {
  detail::check_member(h);
  TestabilityVerdict verdict;
  verdict.testable = true;
  detail::for_each_block_obstacle(h, [&](const std::vector<int>& block, const InducedSubgraph& sub,
                                         const Obstacle& obs) {
    if (!verdict.testable) return;
    verdict.testable = false;
    ObstacleWitness witness;
    witness.pattern_index = 0;
    witness.block_vertices = block;
    witness.obstacle = obs;
    for (int s : obs.s_set) witness.s_set_in_pattern.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
    verdict.witnesses.push_back(std::move(witness));
  });
  return verdict;
}

// Family characterization: testable iff for every member, every obstacle S of
// each of its 2-blocks, and every S' obtained from S by dropping two roles,
// some other member is a sentinel for (block, S, S').
inline TestabilityVerdict family_testable(std::span<const Graph> family) {
  if (family.size() > 16) throw std::invalid_argument("family too large");
  for (const auto& h : family) detail::check_member(h);

  TestabilityVerdict verdict;
  verdict.testable = true;
  for (std::size_t i = 0; i < family.size() && verdict.testable; ++i) {
    detail::for_each_block_obstacle(
        family[i], [&](const std::vector<int>& block, const InducedSubgraph& sub, const Obstacle& obs) {
          if (!verdict.testable) return;
          const int r = static_cast<int>(obs.s_set.size());
          detail::for_each_combination(r, r - 2, [&](const std::vector<int>& idx) {
            std::vector<int> s_prime;
            for (int x : idx) s_prime.push_back(obs.s_set[static_cast<std::size_t>(x)]);
            bool covered = false;
            for (std::size_t j = 0; j < family.size() && !covered; ++j) {
              if (j == i) continue;
              auto [ok, rep] = is_sentinel(family[j], sub.graph, obs, s_prime);
              if (ok) {
                covered = true;
                SentinelEntry entry;
                entry.pattern_index = static_cast<int>(i);
                entry.block_vertices = block;
                entry.obstacle = obs;
                for (int s : obs.s_set) {
                  entry.s_set_in_pattern.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
                }
                for (int s : s_prime) {
                  entry.s_prime_in_pattern.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
                }
                entry.sentinel_index = static_cast<int>(j);
                entry.rep = std::move(*rep);
                verdict.sentinel_table.push_back(std::move(entry));
              }
            }
            if (!covered) {
              verdict.testable = false;
              ObstacleWitness witness;
              witness.pattern_index = static_cast<int>(i);
              witness.block_vertices = block;
              witness.obstacle = obs;
              for (int s : obs.s_set) {
                witness.s_set_in_pattern.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
              }
              for (int s : s_prime) {
                witness.s_prime_in_pattern.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
              }
              verdict.witnesses.push_back(std::move(witness));
              return false;
            }
            return true;
          });
        });
  }
  if (!verdict.testable) verdict.sentinel_table.clear();
  return verdict;
}

}  // namespace degentest
