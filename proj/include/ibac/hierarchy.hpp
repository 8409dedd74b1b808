#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibac/schema.hpp"

namespace ibac {

/// Directed graph where an edge (u, v) means u dominates v.
struct HierarchyGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string entry;
};

/// S(u) for every vertex, in vertex declaration order.
struct InclusionEncoding {
  std::vector<std::string> order;
  std::map<std::string, std::set<std::string>> sets;

  const std::set<std::string>& of(const std::string& vertex) const;
};

/// u dominates v when every entry->v path passes through u. Computed by
/// removing u and testing whether v is still reachable from the entry, so a
/// vertex the entry cannot reach is dominated by everything.
bool graph_dominates(const HierarchyGraph& graph, const std::string& u, const std::string& v);

/// S(u) = {u} plus every vertex u dominates. Trees and chains only.
InclusionEncoding flatten(const HierarchyGraph& graph);

bool is_tree(const HierarchyGraph& graph);

/// The schema's level chain, highest level as the entry.
HierarchyGraph level_chain(const PolicySchema& schema);

HierarchyGraph parse_graph(std::string_view json_text);
HierarchyGraph load_graph(const std::filesystem::path& path);

}  // namespace ibac
