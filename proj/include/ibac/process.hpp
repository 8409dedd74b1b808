#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibac/labels.hpp"
#include "ibac/schema.hpp"

namespace ibac {

/// Administrator-provisioned (subject, process, classification) tuple.
/// Devices (printer) and contexts (briefing room) are both processes.
struct ProcessTuple {
  std::string subject;
  std::string process;
  LabelSet clearance;
  /// Optional bijection scope: inside one context a subject holds at most one tuple.
  std::string context;

  friend bool operator==(const ProcessTuple&, const ProcessTuple&) = default;
};

/// Value-semantic registry; registration returns a new snapshot.
class TupleRegistry {
 public:
  const std::vector<ProcessTuple>& tuples() const { return tuples_; }
  const ProcessTuple* find(std::string_view subject, std::string_view process) const;
  bool knows_process(std::string_view process) const;

  /// Throws duplicate_tuple or bijection_violation.
  TupleRegistry with(ProcessTuple tuple) const;
  TupleRegistry without(std::string_view subject, std::string_view process) const;

  /// Inside `context`, subject -> tuple -> subject is the identity and no
  /// subject appears twice.
  bool bijective_in(std::string_view context) const;

 private:
  std::vector<ProcessTuple> tuples_;
};

TupleRegistry register_tuple(const TupleRegistry& registry, ProcessTuple tuple);

TupleRegistry parse_registry(std::string_view json_text);
std::string registry_to_json(const TupleRegistry& registry);
TupleRegistry load_registry(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void save_registry(const TupleRegistry& registry, const std::filesystem::path& path);

enum class Decision { allow, deny };

struct DecisionReport {
  Decision decision = Decision::deny;
  bool tuple_registered = false;
  bool subject_dominates = false;
  bool tuple_dominates = false;
  bool viewer_registered = true;
  bool viewer_tuple_dominates = true;
  std::string reason;

  bool allowed() const { return decision == Decision::allow; }
};

/// Write through a device: the (subject, process) tuple must be registered,
/// and both the subject clearance and the tuple clearance must dominate.
DecisionReport check_write_via_process(const PolicySchema& schema, const TupleRegistry& registry,
                                       const std::string& subject, const LabelSet& subject_clearance,
                                       const std::string& process, const LabelSet& object);

struct DisclosurePolicy {
  bool require_viewer_tuple_dominance = false;
};

/// Disclosure inside a context: both parties registered for the context, and
/// the discloser's own and tuple clearances dominate the object. The viewer's
/// clearance is not consulted.
DecisionReport check_disclosure_in_context(const PolicySchema& schema, const TupleRegistry& registry,
                                           const std::string& discloser,
                                           const LabelSet& discloser_clearance,
                                           const std::string& viewer, const std::string& context,
                                           const LabelSet& object, DisclosurePolicy policy = {});

}  // namespace ibac
