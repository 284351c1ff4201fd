#pragma once

#include <vector>

#include "degentest/graph.hpp"

namespace degentest {

// Certificate of p-degeneracy. peel_order lists vertices in removal order of
// a repeated minimum-degree peeling, so every vertex has at most p neighbors
// occurring later than it in the order.
struct DegeneracyCertificate {
  int p = 0;
  std::vector<int> peel_order;
};

inline DegeneracyCertificate degeneracy(const Graph& g) {
  const int n = g.vertex_count();
  DegeneracyCertificate cert;
  cert.peel_order.reserve(static_cast<std::size_t>(n));
  if (n == 0) return cert;

  std::vector<int> deg(static_cast<std::size_t>(n));
  int maxd = 0;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    maxd = std::max(maxd, g.degree(v));
  }
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(maxd) + 1);
  for (int v = 0; v < n; ++v) bucket[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  int cursor = 0;
  for (int step = 0; step < n; ++step) {
    if (cursor > 0 && !bucket[static_cast<std::size_t>(cursor - 1)].empty()) --cursor;
    while (bucket[static_cast<std::size_t>(cursor)].empty()) ++cursor;
    int v = bucket[static_cast<std::size_t>(cursor)].back();
    bucket[static_cast<std::size_t>(cursor)].pop_back();
    if (removed[static_cast<std::size_t>(v)] || deg[static_cast<std::size_t>(v)] != cursor) {
      // stale bucket entry
      --step;
      continue;
    }
    removed[static_cast<std::size_t>(v)] = 1;
    cert.peel_order.push_back(v);
    cert.p = std::max(cert.p, cursor);
    for (int w : g.neighbors(v)) {
      if (!removed[static_cast<std::size_t>(w)]) {
        int d = --deg[static_cast<std::size_t>(w)];
        bucket[static_cast<std::size_t>(d)].push_back(w);
      }
    }
  }
  return cert;
}

// Largest number of later-order neighbors over all vertices; used to check
// certificates against their own bound.
inline int later_neighbor_bound(const Graph& g, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  int worst = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int later = 0;
    for (int w : g.neighbors(v)) {
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)]) ++later;
    }
    worst = std::max(worst, later);
  }
  return worst;
}

}  // namespace degentest
