#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "degentest/graph.hpp"

namespace degentest {

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Family file format: repeated records "graph NAME n m" followed by m edge
// lines in the graph text format. Names must be unique identifiers.
inline std::vector<NamedGraph> read_family_text(std::istream& is) {
  std::vector<NamedGraph> out;
  std::set<std::string> names;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream header(line);
    std::string keyword, name;
    long long n = 0, m = 0;
    if (!(header >> keyword >> name >> n >> m) || keyword != "graph") {
      throw ParseError("bad family record header: " + line);
    }
    std::string rest;
    if (header >> rest) throw ParseError("trailing tokens in header: " + line);
    if (!valid_identifier(name)) throw ParseError("bad graph name: " + name);
    if (!names.insert(name).second) throw ParseError("duplicate graph name: " + name);
    std::ostringstream body;
    body << n << ' ' << m << '\n';
    for (long long i = 0; i < m; ++i) {
      if (!std::getline(is, line)) throw ParseError("unexpected end of family record " + name);
      body << line << '\n';
    }
    out.push_back({name, graph_from_string(body.str())});
  }
  return out;
}

inline void write_family_text(std::span<const NamedGraph> family, std::ostream& os) {
  for (const auto& [name, graph] : family) {
    os << "graph " << name << ' ' << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
    for (auto [u, v] : graph.edges()) os << u << ' ' << v << '\n';
  }
}

inline std::vector<NamedGraph> read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_family_text(in);
}

// Built-in pattern names: C<k> cycle, K<k> clique, P<k> path on k vertices,
// ST<k> star with k leaves.
inline std::optional<Graph> builtin_pattern(const std::string& name) {
  auto suffix_value = [&](std::size_t from) -> std::optional<int> {
    if (from >= name.size()) return std::nullopt;
    int value = 0;
    for (std::size_t i = from; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      value = value * 10 + (name[i] - '0');
    }
    return value;
  };
  if (name.starts_with("ST")) {
    if (auto k = suffix_value(2); k && *k >= 1) return star_graph(*k);
    return std::nullopt;
  }
  if (name.starts_with("C")) {
    if (auto k = suffix_value(1); k && *k >= 3) return cycle_graph(*k);
    return std::nullopt;
  }
  if (name.starts_with("K")) {
    if (auto k = suffix_value(1); k && *k >= 1) return complete_graph(*k);
    return std::nullopt;
  }
  if (name.starts_with("P")) {
    if (auto k = suffix_value(1); k && *k >= 1) return path_graph(*k);
    return std::nullopt;
  }
  return std::nullopt;
}

// Resolves a witness name against the loaded family first, then the built-in
// catalog, then the filesystem.
inline Graph resolve_pattern(const std::string& name, std::span<const NamedGraph> family) {
  for (const auto& entry : family) {
    if (entry.name == name) return entry.graph;
  }
  if (auto builtin = builtin_pattern(name)) return *builtin;
  std::ifstream in(name);
  if (in) return read_graph_text(in);
  throw ParseError("unknown pattern name: " + name);
}

}  // namespace degentest
