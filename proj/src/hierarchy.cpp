#include "ibac/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ibac/error.hpp"

namespace ibac {

namespace {

bool has_vertex(const HierarchyGraph& g, const std::string& v) {
  return std::find(g.vertices.begin(), g.vertices.end(), v) != g.vertices.end();
}

void require_vertex(const HierarchyGraph& g, const std::string& v) {
  if (!has_vertex(g, v)) throw Error(ErrorCode::unknown_node, "unknown node: " + v);
}

// Vertices reachable from the entry without passing through `removed`.
std::set<std::string> reachable(const HierarchyGraph& g, const std::string* removed) {
  std::set<std::string> seen;
  if (removed && *removed == g.entry) return seen;
  std::deque<std::string> pending{g.entry};
  seen.insert(g.entry);
  while (!pending.empty()) {
    const auto current = pending.front();
    pending.pop_front();
    for (const auto& [from, to] : g.edges) {
      if (from != current || (removed && to == *removed)) continue;
      if (seen.insert(to).second) pending.push_back(to);
    }
  }
  return seen;
}

}  // namespace

const std::set<std::string>& InclusionEncoding::of(const std::string& vertex) const {
  const auto it = sets.find(vertex);
  if (it == sets.end()) throw Error(ErrorCode::unknown_node, "unknown node: " + vertex);
  return it->second;
}

bool graph_dominates(const HierarchyGraph& graph, const std::string& u, const std::string& v) {
  require_vertex(graph, u);
  require_vertex(graph, v);
  require_vertex(graph, graph.entry);
  if (u == v) return true;
  return !reachable(graph, &u).count(v);
}

bool is_tree(const HierarchyGraph& graph) {
  std::map<std::string, int> parents;
  for (const auto& [from, to] : graph.edges) ++parents[to];
  for (const auto& v : graph.vertices) {
    const int expected = v == graph.entry ? 0 : 1;
    if (parents[v] != expected) return false;
  }
  return reachable(graph, nullptr).size() == graph.vertices.size();
}

InclusionEncoding flatten(const HierarchyGraph& graph) {
  require_vertex(graph, graph.entry);
  for (const auto& [from, to] : graph.edges) {
    require_vertex(graph, from);
    require_vertex(graph, to);
  }
  const auto all = reachable(graph, nullptr);
  for (const auto& v : graph.vertices) {
    if (!all.count(v)) throw Error(ErrorCode::unreachable_vertex, "vertex not reachable from entry: " + v);
  }
  if (!is_tree(graph)) throw Error(ErrorCode::not_a_tree, "flatten is defined for trees and chains");

  InclusionEncoding out;
  out.order = graph.vertices;
  for (const auto& u : graph.vertices) {
    auto& s = out.sets[u];
    for (const auto& v : graph.vertices) {
      if (graph_dominates(graph, u, v)) s.insert(v);
    }
  }
  return out;
}

HierarchyGraph level_chain(const PolicySchema& schema) {
  HierarchyGraph g;
  g.vertices = schema.levels;
  if (!g.vertices.empty()) g.entry = g.vertices.front();
  for (std::size_t i = 1; i < g.vertices.size(); ++i) g.edges.emplace_back(g.vertices[i - 1], g.vertices[i]);
  return g;
}

HierarchyGraph parse_graph(std::string_view json_text) {
  HierarchyGraph g;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    g.vertices = doc.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : doc.value("edges", nlohmann::json::array())) {
      g.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    g.entry = doc.value("entry", g.vertices.empty() ? std::string{} : g.vertices.front());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("graph: ") + e.what());
  }
  return g;
}

HierarchyGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open graph " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace ibac
