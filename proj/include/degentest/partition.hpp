#pragma once

#include <span>
#include <vector>

#include "degentest/graph.hpp"

namespace degentest {

struct HeavyLightPartition {
  std::vector<int> heavy;  // degree >= h, sorted
  std::vector<int> light;  // complement, sorted
};

inline HeavyLightPartition heavy_light_partition(const Graph& g, int h) {
  if (h < 1) throw std::invalid_argument("heavy threshold must be >= 1");
  HeavyLightPartition out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    (g.degree(v) >= h ? out.heavy : out.light).push_back(v);
  }
  return out;
}

// Removes every edge whose both endpoints have degree >= h on the input
// graph. The result is semi-bipartite with respect to the input's heavy set.
inline Graph semi_bipartite_clean(const Graph& g, int h) {
  if (h < 1) throw std::invalid_argument("heavy threshold must be >= 1");
  std::vector<std::pair<int, int>> kept;
  for (auto [u, v] : g.edges()) {
    if (g.degree(u) >= h && g.degree(v) >= h) continue;
    kept.emplace_back(u, v);
  }
  return Graph::from_edges(g.vertex_count(), kept);
}

struct SComponent {
  std::vector<int> component;  // a connected component of g \ S, sorted
  std::vector<int> closure;    // component plus the S-vertices adjacent to it
};

inline std::vector<SComponent> s_components(const Graph& g, std::span<const int> s) {
  const int n = g.vertex_count();
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (int v : s) {
    if (v < 0 || v >= n) throw VertexOutOfRange("separator vertex out of range");
    in_s[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<SComponent> out;
  for (int root = 0; root < n; ++root) {
    if (in_s[static_cast<std::size_t>(root)] || seen[static_cast<std::size_t>(root)]) continue;
    std::vector<int> comp;
    std::vector<int> stack{root};
    seen[static_cast<std::size_t>(root)] = 1;
    std::set<int> touching_s;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u)) {
        if (in_s[static_cast<std::size_t>(w)]) {
          touching_s.insert(w);
        } else if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    SComponent entry;
    entry.closure = comp;
    entry.closure.insert(entry.closure.end(), touching_s.begin(), touching_s.end());
    std::sort(entry.closure.begin(), entry.closure.end());
    entry.component = std::move(comp);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace degentest
