#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "degentest/graph.hpp"
#include "degentest/rng.hpp"

namespace degentest {

inline constexpr std::uint64_t kNoQueryLimit = std::numeric_limits<std::uint64_t>::max();

// The only access path testers have to an instance: a uniform random-neighbor
// query with a monotone counter. Single-owner; concurrent trials each build
// their own handle over a shared read-only host.
class OracleHandle {
 public:
  OracleHandle(const Graph& host, std::uint64_t seed) : host_(&host), rng_(seed) {}

  // Uniform over N(v). Isolated vertices yield NoNeighbor (nullopt); the
  // query is still counted.
  std::optional<int> query(int v) {
    if (v < 0 || v >= host_->vertex_count()) throw VertexOutOfRange("query vertex out of range");
    ++count_;
    const int d = host_->degree(v);
    if (d == 0) return std::nullopt;
    return host_->neighbors(v)[static_cast<std::size_t>(rng_.below(d))];
  }

  std::uint64_t query_count() const { return count_; }
  int vertex_count() const { return host_->vertex_count(); }

 private:
  const Graph* host_;
  Rng rng_;
  std::uint64_t count_ = 0;
};

// Mutable budget shared across one tester run; nullptr means unlimited.
struct QueryBudget {
  std::uint64_t remaining = kNoQueryLimit;
  bool spend() {
    if (remaining == 0) return false;
    if (remaining != kNoQueryLimit) --remaining;
    return true;
  }
};

// Subgraph discovered by Bounded-BFS: every edge was returned by a query, and
// every non-root vertex has an edge-neighbor one layer below it.
struct ExploredSubgraph {
  int root = -1;
  std::vector<int> vertices;  // discovery order, root first
  std::set<std::pair<int, int>> edges;
  std::map<int, int> layer;
  std::map<int, bool> saturated;        // expanded with the full per-vertex budget s
  std::map<int, int> distinct_sampled;  // distinct neighbors seen at an expanded vertex
  std::uint64_t queries = 0;
};

// Bounded-depth BFS under the random-neighbor oracle: t rounds;
// every frontier vertex gets s neighbor samples with replacement; revisited
// vertices are dropped from the next frontier. The threshold h is recorded for
// downstream light/heavy classification only.
inline ExploredSubgraph bounded_bfs(OracleHandle& oracle, int start, int t, int s,
                                    int heavy_threshold, QueryBudget* budget = nullptr) {
  if (t < 1 || s < 1 || heavy_threshold < 1) {
    throw std::invalid_argument("bounded_bfs parameters must be positive");
  }
  (void)heavy_threshold;
  const std::uint64_t before = oracle.query_count();

  ExploredSubgraph out;
  out.root = start;
  out.vertices.push_back(start);
  out.layer[start] = 0;

  std::vector<int> frontier{start};
  bool exhausted = false;
  for (int depth = 1; depth <= t && !frontier.empty() && !exhausted; ++depth) {
    std::vector<int> next;
    for (int u : frontier) {
      std::set<int> seen_here;
      bool full = true;
      for (int i = 0; i < s; ++i) {
        if (budget && !budget->spend()) {
          full = false;
          exhausted = true;
          break;
        }
        auto w = oracle.query(u);
        if (!w) continue;
        seen_here.insert(*w);
        out.edges.insert(normalized_edge(u, *w));
        if (!out.layer.contains(*w)) {
          out.layer[*w] = depth;
          out.vertices.push_back(*w);
          next.push_back(*w);
        }
      }
      out.saturated[u] = full;
      out.distinct_sampled[u] = static_cast<int>(seen_here.size());
      if (exhausted) break;
    }
    frontier = std::move(next);
  }
  out.queries = oracle.query_count() - before;
  return out;
}

// Default sampling rate: s = h * ceil(ln(2 h^{t+1} / delta)) guarantees every
// light vertex expanded during the walk has all neighbors sampled w.p. 1-delta.
inline int default_samples(int h, int t, double delta = 0.1) {
  double inner = 2.0 * std::pow(static_cast<double>(h), t + 1) / delta;
  return h * static_cast<int>(std::ceil(std::log(inner)));
}

}  // namespace degentest
