#pragma once

#include <stdexcept>
#include <string>

namespace ibac {

enum class ErrorCode {
  unknown_label,
  invalid_label,
  invalid_policy,
  scheme_mismatch,
  schema_mismatch,
  malformed_token,
  label_present,
  label_absent,
  key_collision,
  invalid_key,
  duplicate_tuple,
  bijection_violation,
  unknown_process,
  unknown_context,
  unknown_node,
  not_a_tree,
  unreachable_vertex,
  unknown_row,
  parse_error,
  io_error,
};

const char* to_string(ErrorCode code);

/// Data-level failure raised by every module. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ibac
