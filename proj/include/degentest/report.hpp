#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "degentest/cactus.hpp"
#include "degentest/diagnostics.hpp"
#include "degentest/family_io.hpp"
#include "degentest/instances.hpp"
#include "degentest/testers.hpp"

namespace degentest {

using nlohmann::json;

namespace detail {

inline std::string member_name(std::span<const std::string> names, int index) {
  if (index >= 0 && index < static_cast<int>(names.size())) return names[static_cast<std::size_t>(index)];
  return "#" + std::to_string(index);
}

inline json vertex_list(std::span<const int> v) { return json(std::vector<int>(v.begin(), v.end())); }

}  // namespace detail

inline json verdict_to_json(const TestabilityVerdict& verdict, std::span<const std::string> names) {
  json out;
  out["testable"] = verdict.testable;
  out["witnesses"] = json::array();
  for (const auto& w : verdict.witnesses) {
    json entry;
    entry["pattern"] = detail::member_name(names, w.pattern_index);
    entry["pattern_index"] = w.pattern_index;
    entry["block"] = detail::vertex_list(w.block_vertices);
    entry["obstacle"] = detail::vertex_list(w.s_set_in_pattern);
    entry["s_prime"] = detail::vertex_list(w.s_prime_in_pattern);
    out["witnesses"].push_back(std::move(entry));
  }
  out["sentinel_table"] = json::array();
  for (const auto& e : verdict.sentinel_table) {
    json entry;
    entry["pattern"] = detail::member_name(names, e.pattern_index);
    entry["pattern_index"] = e.pattern_index;
    entry["block"] = detail::vertex_list(e.block_vertices);
    entry["obstacle"] = detail::vertex_list(e.s_set_in_pattern);
    entry["s_prime"] = detail::vertex_list(e.s_prime_in_pattern);
    entry["sentinel"] = detail::member_name(names, e.sentinel_index);
    entry["sentinel_index"] = e.sentinel_index;
    entry["role_map"] = detail::vertex_list(e.rep.role_map);
    entry["articulation_set"] = detail::vertex_list(e.rep.articulation_set);
    out["sentinel_table"].push_back(std::move(entry));
  }
  return out;
}

inline void print_verdict_report(const TestabilityVerdict& verdict,
                                 std::span<const std::string> names, std::ostream& os) {
  os << (verdict.testable ? "testable" : "non-testable") << '\n';
  for (const auto& w : verdict.witnesses) {
    os << "  witness: pattern " << detail::member_name(names, w.pattern_index) << " block {";
    for (std::size_t i = 0; i < w.block_vertices.size(); ++i) {
      os << (i ? "," : "") << w.block_vertices[i];
    }
    os << "} obstacle {";
    for (std::size_t i = 0; i < w.s_set_in_pattern.size(); ++i) {
      os << (i ? "," : "") << w.s_set_in_pattern[i];
    }
    os << "} s_prime {";
    for (std::size_t i = 0; i < w.s_prime_in_pattern.size(); ++i) {
      os << (i ? "," : "") << w.s_prime_in_pattern[i];
    }
    os << "} has no sentinel\n";
  }
  for (const auto& e : verdict.sentinel_table) {
    os << "  sentinel: " << detail::member_name(names, e.sentinel_index) << " covers ("
       << detail::member_name(names, e.pattern_index) << ", {";
    for (std::size_t i = 0; i < e.s_set_in_pattern.size(); ++i) {
      os << (i ? "," : "") << e.s_set_in_pattern[i];
    }
    os << "}, {";
    for (std::size_t i = 0; i < e.s_prime_in_pattern.size(); ++i) {
      os << (i ? "," : "") << e.s_prime_in_pattern[i];
    }
    os << "})\n";
  }
}

inline json bundle_sidecar_json(const InstanceBundle& bundle) {
  json out;
  out["generator"] = bundle.provenance.generator;
  out["seed"] = bundle.provenance.seed;
  json params = json::object();
  for (const auto& [key, value] : bundle.provenance.params) params[key] = value;
  out["params"] = std::move(params);
  out["n"] = bundle.graph.vertex_count();
  out["m"] = bundle.graph.edge_count();
  if (bundle.planted) {
    json members = json::array();
    for (const auto& member : bundle.planted->members) members.push_back(member.mapping);
    out["planted_packing"] = std::move(members);
    out["planted_pattern"] = graph_to_string(bundle.planted->pattern);
  }
  if (bundle.distance_lower_bound) {
    out["distance_lower_bound"] = {{"num", bundle.distance_lower_bound->num},
                                   {"den", bundle.distance_lower_bound->den}};
  }
  if (!bundle.freeness_certificate.empty()) {
    out["freeness_certificate"] =
        bundle.freeness_names.empty()
            ? json(std::vector<std::string>(bundle.freeness_certificate.size(), "?"))
            : json(bundle.freeness_names);
  }
  return out;
}

inline json digraph_to_json(const DependencyDigraph& digraph) {
  json out;
  out["roles"] = digraph.roles;
  out["gamma"] = digraph.gamma;
  out["edges"] = json::array();
  for (const auto& e : digraph.edges) {
    json entry;
    entry["from"] = e.from_role;
    entry["to"] = e.to_role;
    entry["locked"] = e.locked;
    entry["witness_size"] = e.u_set.size();
    out["edges"].push_back(std::move(entry));
  }
  return out;
}

inline void print_digraph(const DependencyDigraph& digraph, std::ostream& os) {
  os << "dependency digraph over roles {";
  for (std::size_t i = 0; i < digraph.roles.size(); ++i) os << (i ? "," : "") << digraph.roles[i];
  os << "} gamma=" << digraph.gamma << '\n';
  if (digraph.edges.empty()) os << "  (no edges)\n";
  for (const auto& e : digraph.edges) {
    os << "  " << e.from_role << " -> " << e.to_role << (e.locked ? " locked" : " unlocked")
       << "  |U|=" << e.u_set.size() << '\n';
  }
}

inline const char* prune_stop_name(PruneStop stop) {
  switch (stop) {
    case PruneStop::independent_pair: return "independent_pair";
    case PruneStop::locked_tournament: return "locked_tournament";
    case PruneStop::volume_collapse: return "volume_collapse";
    case PruneStop::iteration_cap: return "iteration_cap";
  }
  return "?";
}

inline json prune_to_json(const PruneResult& result) {
  json out;
  out["stop"] = prune_stop_name(result.stop);
  out["locked_preserved"] = result.locked_preserved;
  out["final_size"] = result.final.packing.members.size();
  out["trace"] = json::array();
  for (const auto& digraph : result.trace) out["trace"].push_back(digraph_to_json(digraph));
  return out;
}

inline void print_prune_trace(const PruneResult& result, std::ostream& os) {
  os << "prune trace (" << result.trace.size() << " digraphs), stop=" << prune_stop_name(result.stop)
     << ", final packing size " << result.final.packing.members.size() << '\n';
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    os << " step " << i << ": ";
    print_digraph(result.trace[i], os);
  }
}

}  // namespace degentest
