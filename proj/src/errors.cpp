#include "apr/errors.hpp"

namespace apr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return "format";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
    case ErrorKind::taxonomy: return "taxonomy";
    case ErrorKind::vocabulary: return "vocabulary";
    case ErrorKind::resolution_required: return "resolution_required";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::taxonomy:
    case ErrorKind::vocabulary: return 3;
    case ErrorKind::format: return 4;
    case ErrorKind::io: return 5;
    case ErrorKind::config: return 6;
    case ErrorKind::resolution_required: return 7;
  }
  return 1;
}

namespace {

std::string join_field_errors(const std::vector<FieldError>& errors) {
  std::string out = "validation failed";
  for (const auto& e : errors) {
    out += "; ";
    out += e.field;
    out += ": ";
    out += e.message;
  }
  return out;
}

std::string join_pairs(const std::vector<NfrPair>& pairs) {
  std::string out = "conflicting NFRs need priorities:";
  for (const auto& [a, b] : pairs) {
    out += " (" + a + ", " + b + ")";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : Error(ErrorKind::validation, join_field_errors(errors)),
      errors_(std::move(errors)) {}

ValidationError::ValidationError(std::string field, std::string message)
    : ValidationError(std::vector<FieldError>{FieldError{std::move(field), std::move(message)}}) {}

ResolutionRequiredError::ResolutionRequiredError(std::vector<NfrPair> pairs)
    : Error(ErrorKind::resolution_required, join_pairs(pairs)),
      pairs_(std::move(pairs)) {}

}  // namespace apr
