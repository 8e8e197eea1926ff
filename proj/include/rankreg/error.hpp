#pragma once

#include <stdexcept>
#include <string>

namespace rankreg {

// Closed error taxonomy. Every failure surfaced to callers (and the CLI)
// carries one of these codes.
enum class ErrorCode {
  invalid_input,
  degenerate_distribution,
  singular_design,
  no_variation,
  ties_present,
  overlap_violation,
  weak_or_wrong_signed_first_stage,
  insufficient_cells,
  insufficient_local_data,
  invalid_spec,
  missing_column,
  parse_error,
  non_binary_column,
  io_error,
};

const char* error_code_name(ErrorCode code);

// Input errors map to CLI exit code 2, estimator errors to 1.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::degenerate_distribution: return "DegenerateDistribution";
    case ErrorCode::singular_design: return "SingularDesign";
    case ErrorCode::no_variation: return "NoVariation";
    case ErrorCode::ties_present: return "TiesPresent";
    case ErrorCode::overlap_violation: return "OverlapViolation";
    case ErrorCode::weak_or_wrong_signed_first_stage:
      return "WeakOrWrongSignedFirstStage";
    case ErrorCode::insufficient_cells: return "InsufficientCells";
    case ErrorCode::insufficient_local_data: return "InsufficientLocalData";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::non_binary_column: return "NonBinaryColumn";
    case ErrorCode::io_error: return "IoError";
  }
  return "UnknownError";
}

inline bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::invalid_spec:
    case ErrorCode::missing_column:
    case ErrorCode::parse_error:
    case ErrorCode::non_binary_column:
    case ErrorCode::io_error:
      return true;
    default:
      return false;
  }
}

}  // namespace rankreg
