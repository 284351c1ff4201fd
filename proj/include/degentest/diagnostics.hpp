#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "degentest/appearance.hpp"
#include "degentest/obstacles.hpp"
#include "degentest/partition.hpp"
#include "degentest/rng.hpp"

namespace degentest {

// Full-information analysis machinery: unlike the oracle module, everything
// here sees exact degrees.

// Packing of base-appearances with a global heavy-vertex-to-role assignment:
// in every member, a heavy vertex plays exactly the role rho assigns it.
struct RolePreservingPacking {
  Packing packing;
  std::vector<int> s_set;
  std::unordered_map<int, int> rho;  // heavy host vertex -> role (pattern vertex id)
  int heavy_threshold = 1;
};

inline bool role_preserving_valid(const RolePreservingPacking& rp, const Graph& host) {
  if (!packing_edge_disjoint(rp.packing, host)) return false;
  for (const auto& member : rp.packing.members) {
    for (std::size_t role = 0; role < member.mapping.size(); ++role) {
      int v = member.mapping[role];
      if (host.degree(v) < rp.heavy_threshold) continue;
      auto it = rp.rho.find(v);
      if (it == rp.rho.end()) return false;
      if (it->second != static_cast<int>(role)) return false;
    }
  }
  return true;
}

namespace detail {

inline std::unordered_map<int, int> packing_degrees(const Packing& packing) {
  std::unordered_map<int, int> deg;
  for (const auto& member : packing.members) {
    for (int v : member.mapping) ++deg[v];
  }
  return deg;
}

}  // namespace detail

// Keeps the members all of whose heavy vertices are delta-good against the
// input packing: a heavy vertex is delta-good when at least delta*deg(v) of
// its host edges are used by some member.
inline Packing delta_good_filter(const Graph& host, const Packing& packing, int h, double delta) {
  std::unordered_map<int, int> covered;
  for (const auto& member : packing.members) {
    for (auto [u, v] : appearance_host_edges(packing.pattern, member)) {
      ++covered[u];
      ++covered[v];
    }
  }
  auto good = [&](int v) {
    auto it = covered.find(v);
    double c = it == covered.end() ? 0.0 : static_cast<double>(it->second);
    return c >= delta * host.degree(v);
  };
  Packing out{packing.pattern, {}};
  for (const auto& member : packing.members) {
    bool keep = true;
    for (int v : member.mapping) {
      if (host.degree(v) >= h && !good(v)) {
        keep = false;
        break;
      }
    }
    if (keep) out.members.push_back(member);
  }
  return out;
}

// Random-coloring extraction of a role-preserving sub-packing: members whose
// obstacle images are distinctly colored vote for a color-to-role bijection,
// the majority bijection is kept, and rho is read off the colors. Members
// with a heavy vertex in a non-obstacle role can never be kept.
inline RolePreservingPacking role_preserving_extract(const Graph& host, const Packing& packing,
                                                     const Obstacle& obs, int h, int attempts,
                                                     std::uint64_t seed) {
  const int r = static_cast<int>(obs.s_set.size());
  if (r < 1) throw std::invalid_argument("obstacle must be nonempty");

  std::vector<char> eligible(packing.members.size(), 1);
  std::vector<char> has_heavy(packing.members.size(), 0);
  for (std::size_t i = 0; i < packing.members.size(); ++i) {
    const auto& mapping = packing.members[i].mapping;
    for (std::size_t role = 0; role < mapping.size(); ++role) {
      if (host.degree(mapping[role]) < h) continue;
      has_heavy[i] = 1;
      if (std::find(obs.s_set.begin(), obs.s_set.end(), static_cast<int>(role)) ==
          obs.s_set.end()) {
        eligible[i] = 0;
      }
    }
  }

  std::vector<std::size_t> best;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t attempt_seed = mix_seed(seed, static_cast<std::uint64_t>(attempt));
    auto color = [&](int v) {
      return static_cast<int>(mix_seed(attempt_seed, static_cast<std::uint64_t>(v)) %
                              static_cast<std::uint64_t>(r));
    };
    // bijection signature: colors of the obstacle images in role order
    std::map<std::vector<int>, std::vector<std::size_t>> by_bijection;
    std::vector<std::size_t> free_members;
    for (std::size_t i = 0; i < packing.members.size(); ++i) {
      if (!eligible[i]) continue;
      if (!has_heavy[i]) {
        free_members.push_back(i);
        continue;
      }
      std::vector<int> signature;
      std::set<int> distinct;
      for (int role : obs.s_set) {
        int c = color(packing.members[i].mapping[static_cast<std::size_t>(role)]);
        signature.push_back(c);
        distinct.insert(c);
      }
      if (static_cast<int>(distinct.size()) == r) by_bijection[signature].push_back(i);
    }
    std::vector<std::size_t> kept = free_members;
    std::size_t majority = 0;
    for (const auto& [signature, ids] : by_bijection) majority = std::max(majority, ids.size());
    for (const auto& [signature, ids] : by_bijection) {
      if (ids.size() == majority) {
        kept.insert(kept.end(), ids.begin(), ids.end());
        break;
      }
    }
    if (kept.size() > best.size()) best = std::move(kept);
  }

  double factorial = 1.0, power = 1.0;
  for (int i = 1; i <= r; ++i) factorial *= i;
  for (int i = 0; i < 2 * r; ++i) power *= r;
  const double target = static_cast<double>(packing.members.size()) * factorial / power / 2.0;
  if (static_cast<double>(best.size()) < target) {
    throw Underweight("no attempt reached the expected extraction size");
  }

  RolePreservingPacking out;
  out.packing.pattern = packing.pattern;
  out.s_set = obs.s_set;
  out.heavy_threshold = h;
  std::sort(best.begin(), best.end());
  for (std::size_t i : best) out.packing.members.push_back(packing.members[i]);
  for (const auto& member : out.packing.members) {
    for (int role : obs.s_set) {
      int v = member.mapping[static_cast<std::size_t>(role)];
      if (host.degree(v) >= h) out.rho[v] = role;
    }
  }
  return out;
}

// Reads the role assignment off an already-consistent packing (a generator's
// planted ground truth); throws if two members disagree on a heavy vertex.
inline RolePreservingPacking planted_role_preserving(const Graph& host, const Packing& packing,
                                                     std::span<const int> s_set, int h) {
  RolePreservingPacking out;
  out.packing = packing;
  out.s_set.assign(s_set.begin(), s_set.end());
  out.heavy_threshold = h;
  for (const auto& member : packing.members) {
    for (std::size_t role = 0; role < member.mapping.size(); ++role) {
      int v = member.mapping[role];
      if (host.degree(v) < h) continue;
      auto [it, inserted] = out.rho.emplace(v, static_cast<int>(role));
      if (!inserted && it->second != static_cast<int>(role)) {
        throw std::invalid_argument("packing is not role-preserving");
      }
    }
  }
  return out;
}

// Iteratively drops members containing a heavy vertex whose packing degree
// fell below gamma * deg(v), until a fixpoint.
inline RolePreservingPacking gamma_good_refine(const Graph& host, const RolePreservingPacking& rp,
                                               double gamma) {
  RolePreservingPacking out = rp;
  for (;;) {
    auto deg_k = detail::packing_degrees(out.packing);
    std::vector<Appearance> kept;
    for (const auto& member : out.packing.members) {
      bool ok = true;
      for (int v : member.mapping) {
        if (host.degree(v) >= out.heavy_threshold &&
            static_cast<double>(deg_k[v]) < gamma * host.degree(v)) {
          ok = false;
          break;
        }
      }
      if (ok) kept.push_back(member);
    }
    if (kept.size() == out.packing.members.size()) break;
    out.packing.members = std::move(kept);
  }
  // drop rho entries for vertices no longer present
  auto deg_k = detail::packing_degrees(out.packing);
  for (auto it = out.rho.begin(); it != out.rho.end();) {
    it = deg_k.contains(it->first) ? std::next(it) : out.rho.erase(it);
  }
  return out;
}

struct DigraphEdge {
  int from_role = 0;
  int to_role = 0;
  bool locked = false;
  std::vector<int> u_set;            // qualifying heavy vertices of from_role
  std::map<int, int> partner;        // u -> its best partner at to_role
  std::map<int, int> partner_count;  // u -> co-occurrence with that partner
};

// Role-pair co-occurrence structure over a role-preserving packing.
struct DependencyDigraph {
  std::vector<int> roles;
  double gamma = 0.0;
  std::vector<DigraphEdge> edges;

  const DigraphEdge* edge(int from, int to) const {
    for (const auto& e : edges) {
      if (e.from_role == from && e.to_role == to) return &e;
    }
    return nullptr;
  }
  bool has_independent_pair() const {
    for (std::size_t i = 0; i < roles.size(); ++i) {
      for (std::size_t j = i + 1; j < roles.size(); ++j) {
        if (!edge(roles[i], roles[j]) && !edge(roles[j], roles[i])) return true;
      }
    }
    return false;
  }
  // tournament (anti-parallel edges allowed) with every present edge locked
  bool is_locked_tournament() const {
    if (has_independent_pair()) return false;
    for (const auto& e : edges) {
      if (!e.locked) return false;
    }
    return true;
  }
};

// An edge s_i -> s_j exists when a set U_i carrying a gamma-fraction of the
// role's packing degree has, per vertex, some partner at role s_j co-occurring
// in a gamma-fraction of its members; locked when every such partner accounts
// for all of them.
inline DependencyDigraph dependency_digraph(const RolePreservingPacking& rp, double gamma) {
  DependencyDigraph out;
  out.roles = rp.s_set;
  out.gamma = gamma;
  const auto& members = rp.packing.members;
  auto deg_k = detail::packing_degrees(rp.packing);

  std::unordered_map<int, long long> role_mass;
  std::unordered_map<int, std::vector<int>> role_vertices;
  for (const auto& [v, role] : rp.rho) {
    auto it = deg_k.find(v);
    if (it == deg_k.end()) continue;
    role_mass[role] += it->second;
    role_vertices[role].push_back(v);
  }
  for (auto& [role, list] : role_vertices) std::sort(list.begin(), list.end());

  for (int si : out.roles) {
    for (int sj : out.roles) {
      if (si == sj) continue;
      auto verts = role_vertices.find(si);
      if (verts == role_vertices.end() || role_mass[si] <= 0) continue;

      DigraphEdge edge;
      edge.from_role = si;
      edge.to_role = sj;
      long long u_mass = 0;
      bool all_full = true;
      for (int u : verts->second) {
        // co-occurrence counts of u (playing si) with heavy partners at sj
        std::map<int, int> cooc;
        for (const auto& member : members) {
          if (member.mapping[static_cast<std::size_t>(si)] != u) continue;
          int v = member.mapping[static_cast<std::size_t>(sj)];
          if (rp.rho.contains(v)) ++cooc[v];
        }
        int best_v = -1, best_c = 0;
        for (auto [v, c] : cooc) {
          if (c > best_c) {
            best_c = c;
            best_v = v;
          }
        }
        const int du = deg_k[u];
        if (best_v >= 0 && static_cast<double>(best_c) >= gamma * du) {
          edge.u_set.push_back(u);
          edge.partner[u] = best_v;
          edge.partner_count[u] = best_c;
          u_mass += du;
          if (best_c != du) all_full = false;
        }
      }
      if (edge.u_set.empty()) continue;
      if (static_cast<double>(u_mass) < gamma * static_cast<double>(role_mass[si])) continue;
      edge.locked = all_full;
      out.edges.push_back(std::move(edge));
    }
  }
  return out;
}

enum class PruneStop { independent_pair, locked_tournament, volume_collapse, iteration_cap };

struct PruneResult {
  RolePreservingPacking final;
  std::vector<DependencyDigraph> trace;
  PruneStop stop = PruneStop::iteration_cap;
  bool locked_preserved = true;
};

namespace detail {

inline std::set<std::pair<int, int>> locked_pairs(const DependencyDigraph& d) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : d.edges) {
    if (e.locked) out.emplace(e.from_role, e.to_role);
  }
  return out;
}

}  // namespace detail

// Iterative pruning toward an independent pair or a locked tournament: pick
// the first unlocked edge, restrict every member through its best-partner
// map, then drop members touching vertices that fell below the volume
// threshold. At most |S|^2 iterations.
inline PruneResult iterative_prune(const Graph& host, const RolePreservingPacking& rp,
                                   double gamma, int p) {
  PruneResult result;
  result.final = rp;
  result.trace.push_back(dependency_digraph(result.final, gamma));
  const int cap = static_cast<int>(rp.s_set.size()) * static_cast<int>(rp.s_set.size());
  const double n = static_cast<double>(host.vertex_count());

  for (int iteration = 0; iteration < cap; ++iteration) {
    const DependencyDigraph& digraph = result.trace.back();
    if (digraph.has_independent_pair()) {
      result.stop = PruneStop::independent_pair;
      return result;
    }
    if (digraph.is_locked_tournament()) {
      result.stop = PruneStop::locked_tournament;
      return result;
    }
    const DigraphEdge* unlocked = nullptr;
    for (int si : digraph.roles) {
      for (int sj : digraph.roles) {
        if (si == sj) continue;
        const DigraphEdge* e = digraph.edge(si, sj);
        if (e && !e->locked) {
          unlocked = e;
          break;
        }
      }
      if (unlocked) break;
    }
    if (!unlocked) {
      result.stop = PruneStop::iteration_cap;
      return result;
    }

    const std::size_t volume_before = result.final.packing.members.size();
    std::set<int> u_set(unlocked->u_set.begin(), unlocked->u_set.end());
    std::vector<Appearance> restricted;
    for (const auto& member : result.final.packing.members) {
      int u = member.mapping[static_cast<std::size_t>(unlocked->from_role)];
      if (!u_set.contains(u)) continue;
      if (member.mapping[static_cast<std::size_t>(unlocked->to_role)] != unlocked->partner.at(u)) {
        continue;
      }
      restricted.push_back(member);
    }
    RolePreservingPacking next = result.final;
    next.packing.members = std::move(restricted);

    const double threshold =
        gamma * gamma * static_cast<double>(volume_before) / (10.0 * p * n);
    auto deg_next = detail::packing_degrees(next.packing);
    std::set<int> bad;
    for (const auto& [v, dk] : deg_next) {
      if (host.degree(v) >= next.heavy_threshold &&
          static_cast<double>(dk) < threshold * host.degree(v)) {
        bad.insert(v);
      }
    }
    if (!bad.empty()) {
      std::vector<Appearance> cleaned;
      for (const auto& member : next.packing.members) {
        bool touches = false;
        for (int v : member.mapping) {
          if (bad.contains(v)) {
            touches = true;
            break;
          }
        }
        if (!touches) cleaned.push_back(member);
      }
      next.packing.members = std::move(cleaned);
    }
    auto deg_final = detail::packing_degrees(next.packing);
    for (auto it = next.rho.begin(); it != next.rho.end();) {
      it = deg_final.contains(it->first) ? std::next(it) : next.rho.erase(it);
    }

    result.final = std::move(next);
    result.trace.push_back(dependency_digraph(result.final, gamma));

    auto before_locked = detail::locked_pairs(digraph);
    auto after_locked = detail::locked_pairs(result.trace.back());
    for (const auto& pair : before_locked) {
      if (!after_locked.contains(pair)) result.locked_preserved = false;
    }
    if (static_cast<double>(result.final.packing.members.size()) <
        0.8 * gamma * gamma * static_cast<double>(volume_before)) {
      result.stop = PruneStop::volume_collapse;
      return result;
    }
  }
  result.stop = PruneStop::iteration_cap;
  return result;
}

// Paper-default cleaning constants for a given degeneracy, distance and
// pattern size; all overridable at call sites.
struct DiagnosticsParams {
  int h = 1;
  double delta = 0.0;
  double gamma = 0.0;
};

inline DiagnosticsParams paper_constants(int p, double epsilon, int k) {
  DiagnosticsParams out;
  out.h = static_cast<int>(std::ceil(4.0 * p * p / epsilon));
  out.delta = epsilon / (4.0 * k * p * p);
  out.gamma = out.delta / (2.0 * std::pow(static_cast<double>(k), k));
  return out;
}

}  // namespace degentest
