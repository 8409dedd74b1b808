#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ibac/labels.hpp"

namespace ibac {

/// `parent` includes `child`: a subject cleared for the parent also sees the child.
struct ProjectEdge {
  std::string parent;
  std::string child;
};

/// Per-codec integer code for every label name.
struct CodeAssignments {
  std::map<std::string, unsigned> bit_positions;
  std::map<std::string, unsigned> exponents;
  std::map<std::string, std::uint64_t> primes;
};

enum class LabelKind { level, compartment, project };

/// The universe of discourse. Immutable once loaded; validate before use.
struct PolicySchema {
  std::string id;
  std::vector<std::string> levels;  // highest first
  std::vector<std::string> compartments;
  std::vector<std::string> projects;
  std::vector<ProjectEdge> project_edges;
  CodeAssignments assignments;
  unsigned base = 3;

  /// Levels, then compartments, then projects, in declared order.
  std::vector<std::string> universe() const;
  std::size_t label_count() const { return levels.size() + compartments.size() + projects.size(); }

  std::optional<LabelKind> kind_of(std::string_view name) const;
  bool contains(std::string_view name) const { return kind_of(name).has_value(); }
  /// 0 is the highest level.
  std::optional<std::size_t> level_rank(std::string_view name) const;

  /// Code lookups; throw Error(unknown_label) when the name has no code.
  unsigned bit_of(const std::string& name) const;
  unsigned exponent_of(const std::string& name) const;
  std::uint64_t prime_of(const std::string& name) const;
};

/// Fills every codec map that is empty: bits and exponents 0..n-1 and primes
/// from the ascending odd-prime sequence, all in universe order.
void auto_assign(PolicySchema& schema);

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

/// Report-style check of every schema invariant; never throws.
ValidationReport validate_schema(const PolicySchema& schema);

/// Throws Error(invalid_policy) carrying the first violations when the schema is invalid.
void require_valid(const PolicySchema& schema);

/// Reads the JSON policy document and auto-assigns missing codecs, without validating.
PolicySchema read_policy(std::string_view json_text);
/// read_policy followed by require_valid.
PolicySchema parse_policy(std::string_view json_text);
PolicySchema load_policy(const std::filesystem::path& path);
std::string policy_to_json(const PolicySchema& schema);

struct SubjectClearance {
  LabelSet labels;
  LabelSet included;
};

/// Downward closure of a subject label: every level at or below the highest
/// given level, project marks along hierarchy edges, compartments unchanged.
SubjectClearance expand_subject(const PolicySchema& schema, const LabelSet& label);

/// Objects carry exactly one level and are never expanded.
LabelSet object_label(const PolicySchema& schema, const LabelSet& label);

/// Throws Error(unknown_label) for the first name outside the schema.
void require_known(const PolicySchema& schema, const LabelSet& label);

}  // namespace ibac
