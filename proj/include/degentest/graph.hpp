#pragma once

#include <algorithm>
#include <istream>
#include <fstream>
#include <ostream>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "degentest/errors.hpp"

namespace degentest {

// Undirected simple graph over dense 0-based vertex indices. Adjacency lists
// are kept sorted ascending; isolated vertices are allowed. Instances are
// immutable in spirit once built: algorithms take them by const reference and
// never mutate shared graphs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      g.check_endpoints(u, v);
      g.adj_[static_cast<std::size_t>(u)].push_back(v);
      g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
        throw std::invalid_argument("duplicate edge");
      }
    }
    g.m_ = edges.size();
    return g;
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return m_; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
  }

  void add_edge(int u, int v) {
    check_endpoints(u, v);
    if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
    insert_sorted(adj_[static_cast<std::size_t>(u)], v);
    insert_sorted(adj_[static_cast<std::size_t>(v)], u);
    ++m_;
  }

  void remove_edge(int u, int v) {
    if (!has_edge(u, v)) throw std::invalid_argument("no such edge");
    erase_sorted(adj_[static_cast<std::size_t>(u)], v);
    erase_sorted(adj_[static_cast<std::size_t>(v)], u);
    --m_;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
  }

  // Normalized (u < v) edge list in lexicographic pair order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < vertex_count(); ++u) {
      for (int v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check_endpoints(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
      throw VertexOutOfRange("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop");
  }

  static void insert_sorted(std::vector<int>& list, int x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }

  static void erase_sorted(std::vector<int>& list, int x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }

  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

inline std::pair<int, int> normalized_edge(int u, int v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

// Connectivity counts every vertex: a graph with an isolated vertex and a
// nontrivial component is disconnected.
inline bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> comps;
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int w : g.neighbors(u)) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_parent;  // local index -> parent vertex id
};

// Induced subgraph on `vertices` (need not be sorted; duplicates rejected).
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> verts(vertices.begin(), vertices.end());
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
    throw std::invalid_argument("duplicate vertex in induced set");
  }
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    local[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (int w : g.neighbors(verts[i])) {
      int lw = local[static_cast<std::size_t>(w)];
      if (lw > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), lw);
    }
  }
  return {Graph::from_edges(static_cast<int>(verts.size()), edges), std::move(verts)};
}

inline Graph cycle_graph(int k) {
  if (k < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) e.emplace_back(std::min(i, (i + 1) % k), std::max(i, (i + 1) % k));
  return Graph::from_edges(k, e);
}

inline Graph complete_graph(int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
  }
  return Graph::from_edges(k, e);
}

// Star with `leaves` leaves; vertex 0 is the center.
inline Graph star_graph(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs >= 1 leaf");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph path_graph(int k) {
  if (k < 1) throw std::invalid_argument("path needs >= 1 vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(k, e);
}

// Text format: "n m" on the first line, then m lines "u v" with
// 0 <= u < v < n. Writing emits edges in lexicographic pair order so the
// format round-trips bit-exactly.
inline void write_graph_text(const Graph& g, std::ostream& os) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline std::string graph_to_string(const Graph& g) {
  std::ostringstream ss;
  write_graph_text(g, ss);
  return ss.str();
}

namespace detail {

inline bool parse_two_ints(const std::string& line, long long& a, long long& b) {
  std::istringstream ss(line);
  if (!(ss >> a >> b)) return false;
  std::string rest;
  if (ss >> rest) return false;
  return true;
}

}  // namespace detail

inline Graph read_graph_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty graph input");
  long long n = 0, m = 0;
  if (!detail::parse_two_ints(line, n, m) || n < 0 || m < 0) {
    throw ParseError("bad header line: " + line);
  }
  Graph g(static_cast<int>(n));
  std::set<std::pair<int, int>> seen;
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(is, line)) throw ParseError("unexpected end of edge list");
    long long u = 0, v = 0;
    if (!detail::parse_two_ints(line, u, v)) throw ParseError("bad edge line: " + line);
    if (u < 0 || v < 0 || u >= v || v >= n) throw ParseError("edge out of range: " + line);
    if (!seen.emplace(static_cast<int>(u), static_cast<int>(v)).second) {
      throw ParseError("duplicate edge line: " + line);
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

inline Graph graph_from_string(const std::string& text) {
  std::istringstream ss(text);
  return read_graph_text(ss);
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_graph_text(in);
}

inline void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_graph_text(g, out);
}

}  // namespace degentest
