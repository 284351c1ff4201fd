#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "degentest/graph.hpp"
#include "degentest/rng.hpp"

namespace degentest {

// Exhaustive backtracking works comfortably up to this pattern size.
inline constexpr int kMaxPatternVertices = 12;

// An injective edge-preserving embedding of a pattern into a host.
struct Appearance {
  int pattern_size = 0;
  std::vector<int> mapping;  // pattern vertex -> host vertex
};

inline bool appearance_valid(const Graph& pattern, const Graph& host, const Appearance& app) {
  if (app.pattern_size != pattern.vertex_count()) return false;
  if (static_cast<int>(app.mapping.size()) != pattern.vertex_count()) return false;
  std::set<int> used;
  for (int hv : app.mapping) {
    if (hv < 0 || hv >= host.vertex_count()) return false;
    if (!used.insert(hv).second) return false;
  }
  for (auto [a, b] : pattern.edges()) {
    if (!host.has_edge(app.mapping[static_cast<std::size_t>(a)], app.mapping[static_cast<std::size_t>(b)])) {
      return false;
    }
  }
  return true;
}

inline std::vector<std::pair<int, int>> appearance_host_edges(const Graph& pattern,
                                                              const Appearance& app) {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : pattern.edges()) {
    out.push_back(normalized_edge(app.mapping[static_cast<std::size_t>(a)],
                                  app.mapping[static_cast<std::size_t>(b)]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Pattern vertices ordered so that each one is adjacent to an earlier one
// whenever the pattern allows it; ties broken by ascending degree then index.
// This keeps candidate sets anchored to already-placed images.
inline std::vector<int> match_order(const Graph& pattern, std::span<const int> forced_first = {}) {
  const int k = pattern.vertex_count();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(k));
  std::vector<char> chosen(static_cast<std::size_t>(k), 0);
  for (int v : forced_first) {
    order.push_back(v);
    chosen[static_cast<std::size_t>(v)] = 1;
  }
  auto better = [&](int a, int b) {
    if (b < 0) return true;
    if (pattern.degree(a) != pattern.degree(b)) return pattern.degree(a) < pattern.degree(b);
    return a < b;
  };
  while (static_cast<int>(order.size()) < k) {
    int best = -1;
    bool best_frontier = false;
    for (int v = 0; v < k; ++v) {
      if (chosen[static_cast<std::size_t>(v)]) continue;
      bool frontier = false;
      for (int w : pattern.neighbors(v)) {
        if (chosen[static_cast<std::size_t>(w)]) {
          frontier = true;
          break;
        }
      }
      if (frontier && !best_frontier) {
        best = v;
        best_frontier = true;
      } else if (frontier == best_frontier && better(v, best)) {
        best = v;
      }
    }
    order.push_back(best);
    chosen[static_cast<std::size_t>(best)] = 1;
  }
  return order;
}

// Generic injective embedding enumeration. `sink` receives each full mapping
// and returns false to stop the search. `root_order`, when given, drives the
// candidate order for slots with no previously mapped pattern neighbor.
// `forbidden` marks host vertices that may not be used by non-anchored slots.
inline void enumerate_embeddings(const Graph& pattern, const Graph& host,
                                 std::span<const std::pair<int, int>> anchors,
                                 std::span<const int> root_order,
                                 const std::vector<char>* forbidden,
                                 const std::function<bool(const std::vector<int>&)>& sink) {
  const int k = pattern.vertex_count();
  const int n = host.vertex_count();
  if (k == 0 || k > n) return;

  std::vector<int> anchor_of(static_cast<std::size_t>(k), -1);
  std::vector<int> forced;
  for (auto [pv, hv] : anchors) {
    anchor_of[static_cast<std::size_t>(pv)] = hv;
    forced.push_back(pv);
  }
  const std::vector<int> order = match_order(pattern, forced);

  std::vector<int> mapping(static_cast<std::size_t>(k), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  // per slot: pattern neighbors that appear earlier in the order
  std::vector<std::vector<int>> earlier(static_cast<std::size_t>(k));
  {
    std::vector<int> pos(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    for (int v = 0; v < k; ++v) {
      for (int w : pattern.neighbors(v)) {
        if (pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(v)]) {
          earlier[static_cast<std::size_t>(v)].push_back(w);
        }
      }
    }
  }

  auto consistent = [&](int pv, int hv) {
    if (used[static_cast<std::size_t>(hv)]) return false;
    if (anchor_of[static_cast<std::size_t>(pv)] < 0 && forbidden &&
        (*forbidden)[static_cast<std::size_t>(hv)]) {
      return false;
    }
    for (int w : earlier[static_cast<std::size_t>(pv)]) {
      if (!host.has_edge(hv, mapping[static_cast<std::size_t>(w)])) return false;
    }
    return true;
  };

  std::function<bool(int)> descend = [&](int depth) -> bool {
    if (depth == k) return sink(mapping);
    const int pv = order[static_cast<std::size_t>(depth)];
    const int anchored = anchor_of[static_cast<std::size_t>(pv)];

    auto try_one = [&](int hv) -> bool {
      if (!consistent(pv, hv)) return true;
      mapping[static_cast<std::size_t>(pv)] = hv;
      used[static_cast<std::size_t>(hv)] = 1;
      bool keep_going = descend(depth + 1);
      used[static_cast<std::size_t>(hv)] = 0;
      mapping[static_cast<std::size_t>(pv)] = -1;
      return keep_going;
    };

    if (anchored >= 0) return try_one(anchored);

    if (!earlier[static_cast<std::size_t>(pv)].empty()) {
      // iterate the smallest neighborhood among already-placed neighbors
      int best = -1;
      for (int w : earlier[static_cast<std::size_t>(pv)]) {
        int img = mapping[static_cast<std::size_t>(w)];
        if (best < 0 || host.degree(img) < host.degree(best)) best = img;
      }
      for (int hv : host.neighbors(best)) {
        if (!try_one(hv)) return false;
      }
      return true;
    }
    if (!root_order.empty()) {
      for (int hv : root_order) {
        if (!try_one(hv)) return false;
      }
    } else {
      for (int hv = 0; hv < n; ++hv) {
        if (!try_one(hv)) return false;
      }
    }
    return true;
  };
  descend(0);
}

inline std::vector<long long> appearance_key(const Graph& pattern, const std::vector<int>& mapping,
                                             int host_n) {
  // identity of an appearance: its host vertex set together with its host
  // edge set (edgeless patterns are told apart by vertices alone)
  std::vector<long long> key(mapping.begin(), mapping.end());
  std::sort(key.begin(), key.end());
  std::vector<long long> edge_part;
  for (auto [a, b] : pattern.edges()) {
    auto [u, v] = normalized_edge(mapping[static_cast<std::size_t>(a)],
                                  mapping[static_cast<std::size_t>(b)]);
    edge_part.push_back(static_cast<long long>(u) * host_n + v);
  }
  std::sort(edge_part.begin(), edge_part.end());
  key.push_back(-1);
  key.insert(key.end(), edge_part.begin(), edge_part.end());
  return key;
}

}  // namespace detail

// Up to max_count appearances of `pattern` in `host`, exhaustive when fewer
// exist. Appearances are distinct as (vertex set, edge set) pairs; automorphic
// relabelings collapse to one representative.
inline std::vector<Appearance> find_appearances(const Graph& pattern, const Graph& host,
                                                std::size_t max_count) {
  if (pattern.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  std::vector<Appearance> out;
  if (max_count == 0) return out;
  std::set<std::vector<long long>> seen;
  detail::enumerate_embeddings(pattern, host, {}, {}, nullptr,
                               [&](const std::vector<int>& mapping) {
                                 auto key = detail::appearance_key(pattern, mapping, host.vertex_count());
                                 if (seen.insert(std::move(key)).second) {
                                   out.push_back({pattern.vertex_count(), mapping});
                                 }
                                 return out.size() < max_count;
                               });
  return out;
}

// Anchored variant: `anchors` pins pattern vertices to host vertices;
// `forbidden_hosts` (optional) excludes host vertices from non-anchored slots.
inline std::vector<Appearance> find_appearances_anchored(
    const Graph& pattern, const Graph& host, std::span<const std::pair<int, int>> anchors,
    std::size_t max_count, const std::vector<char>* forbidden_hosts = nullptr) {
  if (pattern.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  std::vector<Appearance> out;
  if (max_count == 0) return out;
  std::set<std::vector<long long>> seen;
  detail::enumerate_embeddings(pattern, host, anchors, {}, forbidden_hosts,
                               [&](const std::vector<int>& mapping) {
                                 auto key = detail::appearance_key(pattern, mapping, host.vertex_count());
                                 if (seen.insert(std::move(key)).second) {
                                   out.push_back({pattern.vertex_count(), mapping});
                                 }
                                 return out.size() < max_count;
                               });
  return out;
}

// A collection of pairwise edge-disjoint appearances of one pattern.
struct Packing {
  Graph pattern;
  std::vector<Appearance> members;
};

inline bool packing_edge_disjoint(const Packing& packing, const Graph& host) {
  std::set<std::pair<int, int>> used;
  for (const auto& member : packing.members) {
    if (!appearance_valid(packing.pattern, host, member)) return false;
    for (auto e : appearance_host_edges(packing.pattern, member)) {
      if (!used.insert(e).second) return false;
    }
  }
  return true;
}

// Maximal packing grown greedily: appearances are found one at a time and
// their edges deleted from a working copy, so no further appearance can be
// edge-disjoint from the members. The seed drives the scan order of the
// first slot, making member order reproducible.
inline Packing greedy_packing(const Graph& pattern, const Graph& host, std::uint64_t seed) {
  if (pattern.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  Packing packing{pattern, {}};
  if (pattern.vertex_count() == 0) return packing;
  Graph work = host;
  std::vector<int> scan(static_cast<std::size_t>(host.vertex_count()));
  for (int v = 0; v < host.vertex_count(); ++v) scan[static_cast<std::size_t>(v)] = v;
  Rng rng(seed);
  rng.shuffle(scan);

  for (;;) {
    std::optional<Appearance> found;
    detail::enumerate_embeddings(pattern, work, {}, scan, nullptr,
                                 [&](const std::vector<int>& mapping) {
                                   found = Appearance{pattern.vertex_count(), mapping};
                                   return false;
                                 });
    if (!found) break;
    for (auto [u, v] : appearance_host_edges(pattern, *found)) work.remove_edge(u, v);
    packing.members.push_back(std::move(*found));
  }
  return packing;
}

}  // namespace degentest
