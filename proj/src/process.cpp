#include "ibac/process.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ibac/codec.hpp"
#include "ibac/dominance.hpp"
#include "ibac/error.hpp"

namespace ibac {

const ProcessTuple* TupleRegistry::find(std::string_view subject, std::string_view process) const {
  const auto it = std::find_if(tuples_.begin(), tuples_.end(),
                               [&](const ProcessTuple& t) { return t.subject == subject && t.process == process; });
  return it == tuples_.end() ? nullptr : &*it;
}

bool TupleRegistry::knows_process(std::string_view process) const {
  return std::any_of(tuples_.begin(), tuples_.end(), [&](const ProcessTuple& t) { return t.process == process; });
}

TupleRegistry TupleRegistry::with(ProcessTuple tuple) const {
  if (tuple.subject.empty() || tuple.process.empty()) {
    throw Error(ErrorCode::parse_error, "tuple needs a subject and a process");
  }
  if (find(tuple.subject, tuple.process)) {
    throw Error(ErrorCode::duplicate_tuple, "tuple (" + tuple.subject + ", " + tuple.process + ") already registered");
  }
  if (!tuple.context.empty()) {
    for (const auto& t : tuples_) {
      if (t.context == tuple.context && t.subject == tuple.subject) {
        throw Error(ErrorCode::bijection_violation, "subject " + tuple.subject + " already maps to process " + t.process +
                                                        " in context " + tuple.context);
      }
    }
  }
  TupleRegistry out = *this;
  out.tuples_.push_back(std::move(tuple));
  return out;
}

TupleRegistry TupleRegistry::without(std::string_view subject, std::string_view process) const {
  TupleRegistry out = *this;
  std::erase_if(out.tuples_, [&](const ProcessTuple& t) { return t.subject == subject && t.process == process; });
  return out;
}

bool TupleRegistry::bijective_in(std::string_view context) const {
  // y: subject -> tuple, y^-1: tuple -> subject
  std::map<std::string, const ProcessTuple*> forward;
  for (const auto& t : tuples_) {
    if (t.context != context) continue;
    if (!forward.emplace(t.subject, &t).second) return false;
  }
  return std::all_of(forward.begin(), forward.end(),
                     [](const auto& entry) { return entry.second->subject == entry.first; });
}

TupleRegistry register_tuple(const TupleRegistry& registry, ProcessTuple tuple) {
  return registry.with(std::move(tuple));
}

TupleRegistry parse_registry(std::string_view json_text) {
  TupleRegistry registry;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& t : doc.value("tuples", nlohmann::json::array())) {
      ProcessTuple tuple;
      tuple.subject = t.at("subject").get<std::string>();
      tuple.process = t.at("process").get<std::string>();
      tuple.context = t.value("context", std::string{});
      for (const auto& n : t.value("clearance", nlohmann::json::array())) tuple.clearance.insert(n.get<std::string>());
      registry = registry.with(std::move(tuple));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("registry: ") + e.what());
  }
  return registry;
}

std::string registry_to_json(const TupleRegistry& registry) {
  nlohmann::json doc;
  doc["tuples"] = nlohmann::json::array();
  for (const auto& t : registry.tuples()) {
    nlohmann::json entry{{"subject", t.subject}, {"process", t.process}, {"clearance", t.clearance.names()}};
    if (!t.context.empty()) entry["context"] = t.context;
    doc["tuples"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

TupleRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open registry " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

void save_registry(const TupleRegistry& registry, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out << registry_to_json(registry);
    if (!out.flush()) throw Error(ErrorCode::io_error, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot replace " + path.string() + ": " + ec.message());
}

namespace {

bool clearance_dominates(const PolicySchema& schema, const LabelSet& clearance, const LabelSet& object) {
  const auto subject = expand_subject(schema, clearance);
  const auto s = encode(schema, Scheme::primeprod, subject.included);
  const auto o = encode(schema, Scheme::primeprod, object);
  return test_prime_modulo(schema, s, o).holds;
}

void finish(DecisionReport& report) {
  const bool ok = report.tuple_registered && report.subject_dominates && report.tuple_dominates &&
                  report.viewer_registered && report.viewer_tuple_dominates;
  report.decision = ok ? Decision::allow : Decision::deny;
  if (ok) {
    report.reason = "all conditions hold";
  } else if (!report.tuple_registered) {
    report.reason = "no registered tuple";
  } else if (!report.viewer_registered) {
    report.reason = "viewer has no registered tuple";
  } else if (!report.subject_dominates) {
    report.reason = "subject clearance does not dominate the object";
  } else if (!report.tuple_dominates) {
    report.reason = "tuple clearance does not dominate the object";
  } else {
    report.reason = "viewer tuple clearance does not dominate the object";
  }
}

}  // namespace

DecisionReport check_write_via_process(const PolicySchema& schema, const TupleRegistry& registry,
                                       const std::string& subject, const LabelSet& subject_clearance,
                                       const std::string& process, const LabelSet& object) {
  if (!registry.knows_process(process)) throw Error(ErrorCode::unknown_process, "unknown process: " + process);
  const auto obj = object_label(schema, object);

  DecisionReport report;
  const auto* tuple = registry.find(subject, process);
  report.tuple_registered = tuple != nullptr;
  report.subject_dominates = clearance_dominates(schema, subject_clearance, obj);
  report.tuple_dominates = tuple && clearance_dominates(schema, tuple->clearance, obj);
  finish(report);
  return report;
}

DecisionReport check_disclosure_in_context(const PolicySchema& schema, const TupleRegistry& registry,
                                           const std::string& discloser, const LabelSet& discloser_clearance,
                                           const std::string& viewer, const std::string& context,
                                           const LabelSet& object, DisclosurePolicy policy) {
  if (!registry.knows_process(context)) throw Error(ErrorCode::unknown_context, "unknown context: " + context);
  const auto obj = object_label(schema, object);

  DecisionReport report;
  const auto* discloser_tuple = registry.find(discloser, context);
  const auto* viewer_tuple = registry.find(viewer, context);
  report.tuple_registered = discloser_tuple != nullptr;
  report.viewer_registered = viewer_tuple != nullptr;
  report.subject_dominates = clearance_dominates(schema, discloser_clearance, obj);
  report.tuple_dominates = discloser_tuple && clearance_dominates(schema, discloser_tuple->clearance, obj);
  if (policy.require_viewer_tuple_dominance) {
    report.viewer_tuple_dominates = viewer_tuple && clearance_dominates(schema, viewer_tuple->clearance, obj);
  }
  finish(report);
  return report;
}

}  // namespace ibac
