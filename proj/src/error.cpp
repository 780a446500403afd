#include "causelab/error.hpp"

namespace causelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::empty_causation: return "empty_causation";
    case ErrorCode::oracle_bound_exceeded: return "oracle_bound_exceeded";
    case ErrorCode::causation_space_exhausted: return "causation_space_exhausted";
    case ErrorCode::infeasible_parameters: return "infeasible_parameters";
    case ErrorCode::no_positive_instances: return "no_positive_instances";
    case ErrorCode::inconsistent_positives: return "inconsistent_positives";
    case ErrorCode::unknown_event_type: return "unknown_event_type";
    case ErrorCode::training_diverged: return "training_diverged";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace causelab
