#include "ibac/schema.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ibac/bigint.hpp"
#include "ibac/error.hpp"

namespace ibac {

using nlohmann::json;

std::vector<std::string> PolicySchema::universe() const {
  std::vector<std::string> out;
  out.reserve(label_count());
  out.insert(out.end(), levels.begin(), levels.end());
  out.insert(out.end(), compartments.begin(), compartments.end());
  out.insert(out.end(), projects.begin(), projects.end());
  return out;
}

std::optional<LabelKind> PolicySchema::kind_of(std::string_view name) const {
  auto in = [&](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), name) != v.end(); };
  if (in(levels)) return LabelKind::level;
  if (in(compartments)) return LabelKind::compartment;
  if (in(projects)) return LabelKind::project;
  return std::nullopt;
}

std::optional<std::size_t> PolicySchema::level_rank(std::string_view name) const {
  const auto it = std::find(levels.begin(), levels.end(), name);
  if (it == levels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - levels.begin());
}

namespace {

template <typename Map>
auto lookup(const Map& map, const std::string& name, const char* codec) {
  const auto it = map.find(name);
  if (it == map.end()) throw Error(ErrorCode::unknown_label, std::string("no ") + codec + " code for label " + name);
  return it->second;
}

}  // namespace

unsigned PolicySchema::bit_of(const std::string& name) const {
  return lookup(assignments.bit_positions, name, "bitvec");
}

unsigned PolicySchema::exponent_of(const std::string& name) const {
  return lookup(assignments.exponents, name, "expsum");
}

std::uint64_t PolicySchema::prime_of(const std::string& name) const {
  return lookup(assignments.primes, name, "primeprod");
}

void auto_assign(PolicySchema& schema) {
  const auto names = schema.universe();
  auto& a = schema.assignments;
  if (a.bit_positions.empty()) {
    for (unsigned i = 0; i < names.size(); ++i) a.bit_positions[names[i]] = i;
  }
  if (a.exponents.empty()) {
    for (unsigned i = 0; i < names.size(); ++i) a.exponents[names[i]] = i;
  }
  if (a.primes.empty()) {
    const auto primes = odd_primes(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) a.primes[names[i]] = primes[i];
  }
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

// Shared checks for one codec map: coverage of the universe and injectivity.
template <typename Map>
void check_codec(const PolicySchema& schema, const Map& map, const char* codec, const char* duplicate_code,
                 std::vector<Violation>& out) {
  for (const auto& name : schema.universe()) {
    if (!map.count(name)) out.push_back({"missing-assignment", std::string(codec) + ": no code for " + name});
  }
  std::map<typename Map::mapped_type, std::string> seen;
  for (const auto& [name, code] : map) {
    if (!schema.contains(name)) out.push_back({"unknown-label", std::string(codec) + ": code for unknown label " + name});
    const auto [it, fresh] = seen.emplace(code, name);
    if (!fresh) {
      std::ostringstream msg;
      msg << codec << ": " << it->second << " and " << name << " share code " << code;
      out.push_back({duplicate_code, msg.str()});
    }
  }
}

bool has_cycle(const PolicySchema& schema) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : schema.project_edges) adj[e.parent].push_back(e.child);
  enum Mark { white, grey, black };
  std::map<std::string, Mark> mark;
  std::function<bool(const std::string&)> visit = [&](const std::string& n) {
    mark[n] = grey;
    for (const auto& c : adj[n]) {
      if (mark[c] == grey) return true;
      if (mark[c] == white && visit(c)) return true;
    }
    mark[n] = black;
    return false;
  };
  for (const auto& [n, _] : adj) {
    if (mark[n] == white && visit(n)) return true;
  }
  return false;
}

}  // namespace

ValidationReport validate_schema(const PolicySchema& schema) {
  ValidationReport report;
  auto& out = report.violations;

  if (schema.id.find_first_of(" \t\r\n") != std::string::npos) out.push_back({"bad-id", "schema id contains whitespace"});
  if (schema.levels.empty()) out.push_back({"no-levels", "at least one level is required"});
  if (schema.base < 2) out.push_back({"base-too-small", "expsum base must be at least 2"});

  std::set<std::string> names;
  for (const auto& name : schema.universe()) {
    if (name.empty() || name.find_first_of(",;\t\r\n") != std::string::npos) {
      out.push_back({"bad-label", "label name is empty or contains a separator: '" + name + "'"});
    }
    if (!names.insert(name).second) out.push_back({"duplicate-label", "label declared twice: " + name});
  }

  const auto& a = schema.assignments;
  check_codec(schema, a.bit_positions, "bitvec", "duplicate-bit", out);
  check_codec(schema, a.exponents, "expsum", "repeated-index", out);
  check_codec(schema, a.primes, "primeprod", "duplicate-prime", out);

  std::set<unsigned> bits;
  for (const auto& [_, b] : a.bit_positions) bits.insert(b);
  if (!bits.empty() && (*bits.begin() != 0 || *bits.rbegin() + 1 != bits.size())) {
    out.push_back({"non-contiguous-bits", "bit positions must be contiguous from 0"});
  }
  for (const auto& [name, p] : a.primes) {
    if (!is_prime(p)) out.push_back({"not-prime", "primeprod: code " + std::to_string(p) + " of " + name + " is not prime"});
  }

  for (const auto& e : schema.project_edges) {
    for (const auto* n : {&e.parent, &e.child}) {
      if (schema.kind_of(*n) != LabelKind::project) out.push_back({"unknown-project", "project edge names " + *n});
    }
  }
  if (has_cycle(schema)) out.push_back({"cyclic-projects", "project hierarchy contains a cycle"});
  return report;
}

void require_valid(const PolicySchema& schema) {
  const auto report = validate_schema(schema);
  if (report.ok()) return;
  std::string msg = "invalid policy";
  for (std::size_t i = 0; i < report.violations.size() && i < 3; ++i) {
    msg += (i == 0 ? ": " : "; ") + report.violations[i].message;
  }
  throw Error(ErrorCode::invalid_policy, msg);
}

namespace {

std::vector<std::string> string_list(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  for (const auto& v : doc.at(key)) out.push_back(v.get<std::string>());
  return out;
}

template <typename T>
std::map<std::string, T> code_map(const json& assignments, const char* key) {
  std::map<std::string, T> out;
  if (!assignments.contains(key)) return out;
  for (const auto& item : assignments.at(key).items()) out[item.key()] = item.value().template get<T>();
  return out;
}

}  // namespace

PolicySchema read_policy(std::string_view json_text) {
  PolicySchema schema;
  try {
    const auto doc = json::parse(json_text);
    schema.id = doc.value("id", std::string{});
    schema.base = doc.value("base", 3u);
    schema.levels = string_list(doc, "levels");
    schema.compartments = string_list(doc, "compartments");
    if (doc.contains("projects")) {
      // Each entry is a name, or {"name": ..., "includes": [...]}.
      for (const auto& p : doc.at("projects")) {
        if (p.is_string()) {
          schema.projects.push_back(p.get<std::string>());
          continue;
        }
        const auto name = p.at("name").get<std::string>();
        schema.projects.push_back(name);
        for (const auto& child : p.value("includes", json::array())) {
          schema.project_edges.push_back({name, child.get<std::string>()});
        }
      }
    }
    if (doc.contains("assignments")) {
      const auto& a = doc.at("assignments");
      schema.assignments.bit_positions = code_map<unsigned>(a, "bitvec");
      schema.assignments.exponents = code_map<unsigned>(a, "expsum");
      schema.assignments.primes = code_map<std::uint64_t>(a, "primeprod");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("policy: ") + e.what());
  }
  auto_assign(schema);
  return schema;
}

PolicySchema parse_policy(std::string_view json_text) {
  auto schema = read_policy(json_text);
  require_valid(schema);
  return schema;
}

PolicySchema load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open policy " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_policy(buf.str());
}

std::string policy_to_json(const PolicySchema& schema) {
  json doc;
  doc["id"] = schema.id;
  doc["base"] = schema.base;
  doc["levels"] = schema.levels;
  doc["compartments"] = schema.compartments;
  json projects = json::array();
  for (const auto& p : schema.projects) {
    json includes = json::array();
    for (const auto& e : schema.project_edges) {
      if (e.parent == p) includes.push_back(e.child);
    }
    projects.push_back(includes.empty() ? json(p) : json{{"name", p}, {"includes", includes}});
  }
  doc["projects"] = projects;
  doc["assignments"]["bitvec"] = schema.assignments.bit_positions;
  doc["assignments"]["expsum"] = schema.assignments.exponents;
  doc["assignments"]["primeprod"] = schema.assignments.primes;
  return doc.dump(2);
}

void require_known(const PolicySchema& schema, const LabelSet& label) {
  for (const auto& name : label) {
    if (!schema.contains(name)) throw Error(ErrorCode::unknown_label, "unknown label: " + name);
  }
}

SubjectClearance expand_subject(const PolicySchema& schema, const LabelSet& label) {
  require_known(schema, label);
  SubjectClearance out{label, label};

  std::optional<std::size_t> top;
  for (const auto& name : label) {
    if (auto rank = schema.level_rank(name); rank && (!top || *rank < *top)) top = rank;
  }
  if (top) {
    for (std::size_t i = *top; i < schema.levels.size(); ++i) out.included.insert(schema.levels[i]);
  }

  std::deque<std::string> pending;
  for (const auto& name : label) {
    if (schema.kind_of(name) == LabelKind::project) pending.push_back(name);
  }
  while (!pending.empty()) {
    const auto current = pending.front();
    pending.pop_front();
    for (const auto& e : schema.project_edges) {
      if (e.parent == current && out.included.insert(e.child)) pending.push_back(e.child);
    }
  }
  return out;
}

LabelSet object_label(const PolicySchema& schema, const LabelSet& label) {
  require_known(schema, label);
  const auto levels = std::count_if(label.begin(), label.end(),
                                    [&](const std::string& n) { return schema.level_rank(n).has_value(); });
  if (levels != 1) {
    throw Error(ErrorCode::invalid_label,
                "object label must carry exactly one level, got " + std::to_string(levels) + ": {" + label.str() + "}");
  }
  return label;
}

}  // namespace ibac
