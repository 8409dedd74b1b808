#include "ibac/labels.hpp"

#include <algorithm>

#include "ibac/error.hpp"

namespace ibac {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::invalid_label: return "invalid-label";
    case ErrorCode::invalid_policy: return "invalid-policy";
    case ErrorCode::scheme_mismatch: return "scheme-mismatch";
    case ErrorCode::schema_mismatch: return "schema-mismatch";
    case ErrorCode::malformed_token: return "malformed-token";
    case ErrorCode::label_present: return "label-present";
    case ErrorCode::label_absent: return "label-absent";
    case ErrorCode::key_collision: return "key-collision";
    case ErrorCode::invalid_key: return "invalid-key";
    case ErrorCode::duplicate_tuple: return "duplicate-tuple";
    case ErrorCode::bijection_violation: return "bijection-violation";
    case ErrorCode::unknown_process: return "unknown-process";
    case ErrorCode::unknown_context: return "unknown-context";
    case ErrorCode::unknown_node: return "unknown-node";
    case ErrorCode::not_a_tree: return "not-a-tree";
    case ErrorCode::unreachable_vertex: return "unreachable-vertex";
    case ErrorCode::unknown_row: return "unknown-row";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "error";
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::bitvec: return "bitvec";
    case Scheme::expsum: return "expsum";
    case Scheme::primeprod: return "primeprod";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "bitvec" || text == "b") return Scheme::bitvec;
  if (text == "expsum" || text == "e") return Scheme::expsum;
  if (text == "primeprod" || text == "p") return Scheme::primeprod;
  throw Error(ErrorCode::parse_error, "unknown scheme: " + std::string(text));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

LabelSet LabelSet::parse(std::string_view text) {
  LabelSet out;
  while (!text.empty()) {
    const auto comma = text.find_first_of(",;");
    const auto name = trim(text.substr(0, comma));
    if (!name.empty()) out.insert(std::string(name));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool LabelSet::includes(const LabelSet& other) const {
  return std::includes(names_.begin(), names_.end(), other.names_.begin(), other.names_.end());
}

LabelSet LabelSet::united(const LabelSet& other) const {
  LabelSet out = *this;
  for (const auto& n : other) out.insert(n);
  return out;
}

std::string LabelSet::str() const {
  std::string out;
  for (const auto& n : names_) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

}  // namespace ibac
