#pragma once

#include <span>
#include <vector>

#include "degentest/appearance.hpp"
#include "degentest/blocks.hpp"
#include "degentest/graph.hpp"

namespace degentest {

// A minimal separating independent set of a 2-connected pattern; its
// existence is exactly what makes the pattern's freeness non-testable.
struct Obstacle {
  Graph pattern;
  std::vector<int> s_set;  // sorted ascending
};

namespace detail {

inline bool set_is_independent(const Graph& g, std::span<const int> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

inline bool removal_disconnects(const Graph& g, std::span<const int> s) {
  const int n = g.vertex_count();
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  for (int v : s) blocked[static_cast<std::size_t>(v)] = 1;
  int start = -1;
  int remaining = 0;
  for (int v = 0; v < n; ++v) {
    if (!blocked[static_cast<std::size_t>(v)]) {
      ++remaining;
      if (start < 0) start = v;
    }
  }
  if (remaining <= 1) return false;
  std::vector<int> stack{start};
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[static_cast<std::size_t>(start)] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (!blocked[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached < remaining;
}

// ascending-size, then lexicographic enumeration of k-subsets
template <typename Fn>
inline bool for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0) return true;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  if (k == 0) return fn(comb);
  if (k > n) return true;
  for (;;) {
    if (!fn(comb)) return false;
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace detail

inline bool obstacle_valid(const Obstacle& obs) {
  const auto& s = obs.s_set;
  if (s.empty()) return false;
  if (!detail::set_is_independent(obs.pattern, s)) return false;
  if (!detail::removal_disconnects(obs.pattern, s)) return false;
  // minimality: dropping any single vertex must restore connectivity (for an
  // independent set this certifies inclusion-minimality)
  for (std::size_t skip = 0; skip < s.size(); ++skip) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != skip) sub.push_back(s[i]);
    }
    if (detail::removal_disconnects(obs.pattern, sub)) return false;
  }
  return true;
}

// Exhaustive list of obstacles of a 2-connected pattern, by ascending size
// then lexicographic order.
inline std::vector<Obstacle> obstacles(const Graph& h) {
  if (h.vertex_count() > kMaxPatternVertices) {
    throw PatternTooLarge("pattern exceeds the exhaustive-search cap");
  }
  if (!is_biconnected(h)) throw NotTwoConnected("obstacle enumeration needs a 2-connected pattern");
  const int n = h.vertex_count();
  std::vector<Obstacle> out;
  for (int size = 1; size <= n; ++size) {
    detail::for_each_combination(n, size, [&](const std::vector<int>& s) {
      Obstacle cand{h, s};
      if (detail::set_is_independent(h, s) && detail::removal_disconnects(h, s) &&
          obstacle_valid(cand)) {
        out.push_back(std::move(cand));
      }
      return true;
    });
  }
  return out;
}

}  // namespace degentest
