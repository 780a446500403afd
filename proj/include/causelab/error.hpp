#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causelab {

enum class ErrorCode {
  invalid_argument,
  empty_causation,
  oracle_bound_exceeded,
  causation_space_exhausted,
  infeasible_parameters,
  no_positive_instances,
  inconsistent_positives,
  unknown_event_type,
  training_diverged,
  dimension_mismatch,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this type; `code()` is stable and is what
// the CLI prints as its machine-readable prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace causelab
