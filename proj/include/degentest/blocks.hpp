#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "degentest/graph.hpp"

namespace degentest {

// 2-block decomposition of a connected graph: blocks are vertex sets of the
// maximal 2-connected subgraphs and of bridge edges; two blocks meet in at
// most one vertex, which is then an articulation point.
struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;  // each sorted ascending
  std::vector<int> articulation_points;  // sorted ascending
};

namespace detail {

// Iterative lowpoint DFS over one connected component rooted at `root`.
// Appends blocks (as vertex sets) and articulation points.
inline void biconnected_from(const Graph& g, int root, std::vector<int>& disc,
                             std::vector<int>& low, std::vector<char>& is_cut,
                             std::vector<std::vector<int>>& blocks, int& timer) {
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::vector<std::pair<int, int>> edge_stack;
  disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
  stack.push_back({root, -1, 0});
  int root_children = 0;

  auto pop_block = [&](int u, int w) {
    std::set<int> verts;
    while (!edge_stack.empty()) {
      auto [a, b] = edge_stack.back();
      edge_stack.pop_back();
      verts.insert(a);
      verts.insert(b);
      if ((a == u && b == w) || (a == w && b == u)) break;
    }
    blocks.emplace_back(verts.begin(), verts.end());
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nbrs = g.neighbors(f.v);
    if (f.next < nbrs.size()) {
      int w = nbrs[f.next++];
      if (disc[static_cast<std::size_t>(w)] < 0) {
        edge_stack.emplace_back(f.v, w);
        if (f.v == root) ++root_children;
        disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
        stack.push_back({w, f.v, 0});
      } else if (w != f.parent && disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(f.v)]) {
        edge_stack.emplace_back(f.v, w);
        low[static_cast<std::size_t>(f.v)] =
            std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
      }
    } else {
      int v = f.v;
      int parent = f.parent;
      stack.pop_back();
      if (parent >= 0) {
        low[static_cast<std::size_t>(parent)] =
            std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(parent)]) {
          if (parent != root) is_cut[static_cast<std::size_t>(parent)] = 1;
          pop_block(parent, v);
        }
      }
    }
  }
  if (root_children >= 2) is_cut[static_cast<std::size_t>(root)] = 1;
}

}  // namespace detail

inline BlockDecomposition block_decomposition(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedInput("block decomposition needs a connected graph");
  const int n = g.vertex_count();
  BlockDecomposition out;
  if (n <= 1) return out;

  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), -1);
  std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
  int timer = 0;
  detail::biconnected_from(g, 0, disc, low, is_cut, out.blocks, timer);

  for (int v = 0; v < n; ++v) {
    if (is_cut[static_cast<std::size_t>(v)]) out.articulation_points.push_back(v);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

// Articulation points without the connectivity requirement (computed per
// connected component).
inline std::vector<int> articulation_points_of(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), -1);
  std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> blocks;
  int timer = 0;
  for (int v = 0; v < n; ++v) {
    if (disc[static_cast<std::size_t>(v)] < 0) {
      detail::biconnected_from(g, v, disc, low, is_cut, blocks, timer);
    }
  }
  std::vector<int> cuts;
  for (int v = 0; v < n; ++v) {
    if (is_cut[static_cast<std::size_t>(v)]) cuts.push_back(v);
  }
  return cuts;
}

// Blocks in the sense above are exactly the connected graphs without
// articulation points; K2 qualifies.
inline bool is_biconnected(const Graph& g) {
  return is_connected(g) && articulation_points_of(g).empty();
}

}  // namespace degentest
