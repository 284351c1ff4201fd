#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "degentest/appearance.hpp"
#include "degentest/degeneracy.hpp"
#include "degentest/obstacles.hpp"
#include "degentest/partition.hpp"
#include "degentest/rng.hpp"

namespace degentest {

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long n, long long d) {
    long long g = std::gcd(n, d);
    if (g == 0) return {0, 1};
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
};

// A generated host bundled with its ground truth: a planted packing and/or a
// distance lower bound for no-instances, a list of certified-absent patterns
// for yes-instances.
struct InstanceBundle {
  Graph graph;
  std::optional<Packing> planted;
  std::optional<Rational> distance_lower_bound;
  std::vector<Graph> freeness_certificate;
  std::vector<std::string> freeness_names;
  Provenance provenance;
};

struct LBParams {
  Graph base;
  Obstacle obstacle;
  int hub_role_a = -1;  // defaults to obstacle.s_set[0]
  int hub_role_b = -1;  // defaults to obstacle.s_set[1]
  int n = 0;
  std::uint64_t seed = 0;
};

// Largest m with 2m + (r-2) + m^2 * sum_component_sizes <= n.
inline int lb_m_for_n(long long component_total, int r, long long n) {
  long long budget = n - (r - 2);
  if (budget < 0) return 0;
  double disc = std::sqrt(1.0 + static_cast<double>(component_total) * static_cast<double>(budget));
  long long m = static_cast<long long>((disc - 1.0) / static_cast<double>(component_total));
  auto fits = [&](long long x) { return 2 * x + component_total * x * x <= budget; };
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return static_cast<int>(m);
}

inline long long lb_n_for_m(const Graph& base, const Obstacle& obs, int m) {
  long long total = 0;
  for (const auto& comp : s_components(base, obs.s_set)) total += static_cast<long long>(comp.component.size());
  return 2LL * m + (static_cast<long long>(obs.s_set.size()) - 2) + total * m * m;
}

// Adversarial host hiding pattern appearances behind two hub sets: every hub
// pair (i, j) in A x C carries one fresh copy of each S-component of the base,
// wired through the pair and the fixed W vertices; the copy-to-pair assignment
// is shuffled independently per component type. Ground truth: the planted
// packing of exactly m^2 edge-disjoint base-appearances.
inline InstanceBundle lb_construction(const LBParams& params) {
  const Graph& base = params.base;
  const Obstacle& obs = params.obstacle;
  if (!is_biconnected(base) || base.vertex_count() < 3) {
    throw NotTwoConnected("lower-bound base must be 2-connected");
  }
  if (obs.pattern != base || !obstacle_valid(obs)) {
    throw std::invalid_argument("obstacle does not validate against the base");
  }
  const int r = static_cast<int>(obs.s_set.size());
  if (r < 2) throw ObstacleTooSmall("obstacle needs at least two roles");

  int role_a = params.hub_role_a >= 0 ? params.hub_role_a : obs.s_set[0];
  int role_b = params.hub_role_b >= 0 ? params.hub_role_b : obs.s_set[1];
  std::vector<int> w_roles;
  for (int s : obs.s_set) {
    if (s != role_a && s != role_b) w_roles.push_back(s);
  }
  if (role_a == role_b || static_cast<int>(w_roles.size()) != r - 2) {
    throw std::invalid_argument("hub roles must be two distinct obstacle vertices");
  }

  const auto comps = s_components(base, obs.s_set);
  long long comp_total = 0;
  for (const auto& c : comps) comp_total += static_cast<long long>(c.component.size());
  const int m = lb_m_for_n(comp_total, r, params.n);
  if (m < 2) throw NTooSmall("n too small for the construction");
  const long long pairs = static_cast<long long>(m) * m;

  // layout: hubs A, hubs C, fixed W, then the component pools
  std::vector<int> role_to_host(static_cast<std::size_t>(base.vertex_count()), -1);
  const int w_base = 2 * m;
  for (std::size_t i = 0; i < w_roles.size(); ++i) {
    role_to_host[static_cast<std::size_t>(w_roles[i])] = w_base + static_cast<int>(i);
  }
  long long cursor = w_base + static_cast<long long>(w_roles.size());

  struct Pool {
    std::vector<int> roles;      // base vertices of this component
    long long first = 0;         // host id of copy 0
    std::vector<int> pair_of;    // copy index -> pair index
  };
  std::vector<Pool> pools;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Pool pool;
    pool.roles = comps[c].component;
    pool.first = cursor;
    cursor += static_cast<long long>(pool.roles.size()) * pairs;
    pool.pair_of.resize(static_cast<std::size_t>(pairs));
    std::iota(pool.pair_of.begin(), pool.pair_of.end(), 0);
    Rng pool_rng(mix_seed(params.seed, static_cast<std::uint64_t>(c)));
    pool_rng.shuffle(pool.pair_of);
    pools.push_back(std::move(pool));
  }
  if (cursor > params.n) throw NTooSmall("n too small for the construction");

  // copy-local host ids for a copy of pool `c` placed at slot `copy`
  auto copy_host = [&](const Pool& pool, long long copy, int role) {
    auto it = std::find(pool.roles.begin(), pool.roles.end(), role);
    auto offset = static_cast<long long>(it - pool.roles.begin());
    return static_cast<int>(pool.first + copy * static_cast<long long>(pool.roles.size()) + offset);
  };

  std::vector<std::pair<int, int>> edges;
  std::vector<Appearance> members(static_cast<std::size_t>(pairs));
  for (auto& mem : members) {
    mem.pattern_size = base.vertex_count();
    mem.mapping.assign(static_cast<std::size_t>(base.vertex_count()), -1);
  }
  for (long long p = 0; p < pairs; ++p) {
    members[static_cast<std::size_t>(p)].mapping[static_cast<std::size_t>(role_a)] =
        static_cast<int>(p / m);
    members[static_cast<std::size_t>(p)].mapping[static_cast<std::size_t>(role_b)] =
        static_cast<int>(m + p % m);
    for (std::size_t i = 0; i < w_roles.size(); ++i) {
      members[static_cast<std::size_t>(p)].mapping[static_cast<std::size_t>(w_roles[i])] =
          w_base + static_cast<int>(i);
    }
  }
  for (const auto& pool : pools) {
    for (long long copy = 0; copy < pairs; ++copy) {
      const int pair_index = pool.pair_of[static_cast<std::size_t>(copy)];
      auto& mapping = members[static_cast<std::size_t>(pair_index)].mapping;
      for (int role : pool.roles) {
        mapping[static_cast<std::size_t>(role)] = copy_host(pool, copy, role);
      }
      for (int role : pool.roles) {
        const int hu = copy_host(pool, copy, role);
        for (int nb : base.neighbors(role)) {
          int hv;
          if (nb == role_a) {
            hv = pair_index / m;
          } else if (nb == role_b) {
            hv = m + pair_index % m;
          } else if (role_to_host[static_cast<std::size_t>(nb)] >= 0) {
            hv = role_to_host[static_cast<std::size_t>(nb)];
          } else {
            // neighbor inside the same component copy; add once per edge
            if (nb < role) continue;
            hv = copy_host(pool, copy, nb);
          }
          edges.push_back(normalized_edge(hu, hv));
        }
      }
    }
  }

  InstanceBundle bundle;
  bundle.graph = Graph::from_edges(params.n, edges);
  bundle.planted = Packing{base, std::move(members)};
  bundle.distance_lower_bound =
      Rational::of(pairs, static_cast<long long>(params.n) * base.vertex_count());
  bundle.provenance = {"lb_construction",
                       {{"m", std::to_string(m)},
                        {"n", std::to_string(params.n)},
                        {"k", std::to_string(base.vertex_count())},
                        {"r", std::to_string(r)}},
                       params.seed};
  return bundle;
}

// Degenerate two-hub variant: the same pair of physical hubs plays both roles
// for every copy, so the whole packing shares one separator. floor(n/3)
// copies of each S-component are attached; the rest is isolated padding.
inline InstanceBundle two_hub_instance(const Graph& base, const Obstacle& obs, int n,
                                       std::uint64_t seed) {
  if (obs.pattern != base || !obstacle_valid(obs)) {
    throw std::invalid_argument("obstacle does not validate against the base");
  }
  if (obs.s_set.size() != 2) throw std::invalid_argument("two_hub_instance needs a size-2 obstacle");
  const int role_a = obs.s_set[0];
  const int role_b = obs.s_set[1];
  const auto comps = s_components(base, obs.s_set);
  long long comp_total = 0;
  for (const auto& c : comps) comp_total += static_cast<long long>(c.component.size());
  long long copies = std::min<long long>(n / 3, (n - 2) / comp_total);
  if (copies < 1) throw NTooSmall("n too small for the construction");

  long long cursor = 2;
  std::vector<std::pair<int, int>> edges;
  std::vector<Appearance> members(static_cast<std::size_t>(copies));
  for (auto& mem : members) {
    mem.pattern_size = base.vertex_count();
    mem.mapping.assign(static_cast<std::size_t>(base.vertex_count()), -1);
    mem.mapping[static_cast<std::size_t>(role_a)] = 0;
    mem.mapping[static_cast<std::size_t>(role_b)] = 1;
  }
  for (const auto& comp : comps) {
    for (long long copy = 0; copy < copies; ++copy) {
      auto& mapping = members[static_cast<std::size_t>(copy)].mapping;
      for (std::size_t i = 0; i < comp.component.size(); ++i) {
        mapping[static_cast<std::size_t>(comp.component[i])] =
            static_cast<int>(cursor + static_cast<long long>(i));
      }
      for (std::size_t i = 0; i < comp.component.size(); ++i) {
        const int role = comp.component[i];
        const int hu = static_cast<int>(cursor + static_cast<long long>(i));
        for (int nb : base.neighbors(role)) {
          if (nb == role_a) {
            edges.push_back(normalized_edge(hu, 0));
          } else if (nb == role_b) {
            edges.push_back(normalized_edge(hu, 1));
          } else if (nb > role) {
            auto it = std::find(comp.component.begin(), comp.component.end(), nb);
            int hv = static_cast<int>(cursor + (it - comp.component.begin()));
            edges.push_back(normalized_edge(hu, hv));
          }
        }
      }
      cursor += static_cast<long long>(comp.component.size());
    }
  }

  InstanceBundle bundle;
  bundle.graph = Graph::from_edges(n, edges);
  bundle.planted = Packing{base, std::move(members)};
  bundle.distance_lower_bound = Rational::of(copies, n);
  bundle.provenance = {"two_hub_instance",
                       {{"copies", std::to_string(copies)}, {"n", std::to_string(n)}},
                       seed};
  return bundle;
}

// Vertex-disjoint pattern copies plus isolated padding; the easy far instance.
inline InstanceBundle disjoint_copies_instance(const Graph& pattern, int n, double fraction,
                                               std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) throw std::invalid_argument("fraction must be in (0, 1]");
  const int k = pattern.vertex_count();
  if (k < 1) throw std::invalid_argument("pattern must be nonempty");
  long long copies = static_cast<long long>(fraction * static_cast<double>(n) / k + 1e-9);
  if (copies < 1) throw NTooSmall("n too small for one copy");
  if (copies * k > n) copies = n / k;

  std::vector<std::pair<int, int>> edges;
  std::vector<Appearance> members(static_cast<std::size_t>(copies));
  for (long long c = 0; c < copies; ++c) {
    auto& mem = members[static_cast<std::size_t>(c)];
    mem.pattern_size = k;
    mem.mapping.resize(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v) {
      mem.mapping[static_cast<std::size_t>(v)] = static_cast<int>(c * k + v);
    }
    for (auto [u, v] : pattern.edges()) {
      edges.emplace_back(static_cast<int>(c * k + u), static_cast<int>(c * k + v));
    }
  }

  InstanceBundle bundle;
  bundle.graph = Graph::from_edges(n, edges);
  bundle.planted = Packing{pattern, std::move(members)};
  bundle.distance_lower_bound = Rational::of(copies, n);
  bundle.provenance = {"disjoint_copies_instance",
                       {{"copies", std::to_string(copies)},
                        {"n", std::to_string(n)},
                        {"fraction", std::to_string(fraction)}},
                       seed};
  return bundle;
}

// Block attachment: for every v in attach_set, hang copies_per_vertex(v)
// fresh copies of h2 off v by identifying h2's attach vertex with v.
inline Graph compose_attach(const Graph& g, const Graph& h2, int attach_vertex_in_h2,
                            std::span<const int> attach_set,
                            const std::function<int(int)>& copies_per_vertex) {
  if (attach_vertex_in_h2 < 0 || attach_vertex_in_h2 >= h2.vertex_count()) {
    throw VertexOutOfRange("attach vertex out of range");
  }
  std::vector<std::pair<int, int>> edges = g.edges();
  long long cursor = g.vertex_count();
  const int copy_size = h2.vertex_count() - 1;
  for (int v : attach_set) {
    if (v < 0 || v >= g.vertex_count()) throw VertexOutOfRange("attach-set vertex out of range");
    const int copies = copies_per_vertex(v);
    for (int c = 0; c < copies; ++c) {
      auto host_of = [&](int hv) {
        if (hv == attach_vertex_in_h2) return v;
        int offset = hv < attach_vertex_in_h2 ? hv : hv - 1;
        return static_cast<int>(cursor + offset);
      };
      for (auto [a, b] : h2.edges()) edges.push_back(normalized_edge(host_of(a), host_of(b)));
      cursor += copy_size;
    }
  }
  return Graph::from_edges(static_cast<int>(cursor), edges);
}

inline Graph compose_attach_by_degree(const Graph& g, const Graph& h2, int attach_vertex_in_h2,
                                      std::span<const int> attach_set) {
  return compose_attach(g, h2, attach_vertex_in_h2, attach_set,
                        [&](int v) { return g.degree(v); });
}

enum class YesStyle { forest, bounded_degree_random };

namespace detail {

inline bool graph_has_cycle(const Graph& g) {
  return g.edge_count() >= static_cast<std::size_t>(g.vertex_count()) ||
         static_cast<std::size_t>(g.vertex_count()) - g.edge_count() !=
             connected_components(g).size();
}

// one vertex of degree > 1 at most, and acyclic
inline bool is_star(const Graph& g) {
  if (graph_has_cycle(g)) return false;
  int big = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 1) ++big;
  }
  return big <= 1;
}

inline void certify_free(const Graph& host, const Graph& pattern, bool exhaustive,
                         std::uint64_t seed) {
  if (exhaustive) {
    if (!find_appearances(pattern, host, 1).empty()) {
      throw CannotCertify("generated host contains a forbidden pattern");
    }
    return;
  }
  // sampling check: look for the pattern inside balls around random centers
  Rng rng(seed);
  const int radius = pattern.vertex_count();
  for (int trial = 0; trial < 50; ++trial) {
    int center = rng.below(host.vertex_count());
    std::vector<int> ball{center};
    std::set<int> seen{center};
    std::size_t head = 0;
    std::vector<int> dist{0};
    while (head < ball.size()) {
      int u = ball[head];
      int du = dist[head];
      ++head;
      if (du == radius) continue;
      for (int w : host.neighbors(u)) {
        if (seen.insert(w).second) {
          ball.push_back(w);
          dist.push_back(du + 1);
        }
      }
    }
    std::sort(ball.begin(), ball.end());
    auto sub = induced_subgraph(host, ball);
    if (!find_appearances(pattern, sub.graph, 1).empty()) {
      throw CannotCertify("generated host contains a forbidden pattern");
    }
  }
}

}  // namespace detail

// Certified family-free host. Forest style rules out every member containing
// a cycle and explicitly checks tree members; the bounded-degree style builds
// a sparse random bipartite host and certifies post hoc (exhaustively up to
// 3000 vertices, by ball sampling above).
inline InstanceBundle yes_instance(std::span<const Graph> family, int n, YesStyle style,
                                   std::uint64_t seed,
                                   std::span<const std::string> family_names = {}) {
  if (n < 1) throw NTooSmall("need at least one vertex");
  Rng rng(mix_seed(seed, style == YesStyle::forest ? 1 : 2));
  std::vector<std::pair<int, int>> edges;

  int degree_cap = 3;
  if (style == YesStyle::forest) {
    for (const auto& member : family) {
      if (detail::is_star(member) && member.vertex_count() >= 2) {
        int leaves = member.vertex_count() - 1;
        degree_cap = std::min(degree_cap, leaves - 1);
      }
    }
    degree_cap = std::max(degree_cap, 1);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int v = 1; v < n; ++v) {
      if (rng.below(5) == 4) continue;  // fresh root, keeps the host a forest
      for (int tries = 0; tries < 4; ++tries) {
        int u = rng.below(v);
        if (deg[static_cast<std::size_t>(u)] < degree_cap) {
          edges.emplace_back(u, v);
          ++deg[static_cast<std::size_t>(u)];
          ++deg[static_cast<std::size_t>(v)];
          break;
        }
      }
    }
  } else {
    const int half = n / 2;
    if (half < 1) throw NTooSmall("need at least two vertices");
    std::set<std::pair<int, int>> used;
    for (int v = 0; v < half; ++v) {
      for (int tries = 0; tries < 2; ++tries) {
        int w = half + rng.below(n - half);
        if (used.emplace(v, w).second) edges.emplace_back(v, w);
      }
    }
  }

  InstanceBundle bundle;
  bundle.graph = Graph::from_edges(n, edges);
  const bool exhaustive = n <= 3000;
  for (const auto& member : family) {
    if (style == YesStyle::forest && detail::graph_has_cycle(member)) {
      continue;  // a forest cannot contain it
    }
    detail::certify_free(bundle.graph, member, exhaustive, mix_seed(seed, 77));
  }
  bundle.freeness_certificate.assign(family.begin(), family.end());
  bundle.freeness_names.assign(family_names.begin(), family_names.end());
  bundle.provenance = {"yes_instance",
                       {{"style", style == YesStyle::forest ? "forest" : "bounded_degree_random"},
                        {"n", std::to_string(n)}},
                       seed};
  return bundle;
}

// Ground-truth re-validation used by tests and the CLI: planted packings must
// be edge-disjoint valid appearances and consistent with the distance claim.
inline bool bundle_valid(const InstanceBundle& bundle) {
  if (bundle.planted) {
    if (!packing_edge_disjoint(*bundle.planted, bundle.graph)) return false;
    if (bundle.distance_lower_bound) {
      double claimed = bundle.distance_lower_bound->value() * bundle.graph.vertex_count();
      if (static_cast<double>(bundle.planted->members.size()) + 1e-9 < claimed) return false;
    }
  }
  return true;
}

}  // namespace degentest
