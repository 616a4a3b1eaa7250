#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apr {

// Error categories map one-to-one onto CLI exit codes and HTTP statuses.
enum class ErrorKind {
  format,               // unparseable input document
  validation,           // document parsed but violates an invariant
  io,                   // unreadable / unwritable path
  config,               // missing or inconsistent knowledge base or config
  taxonomy,             // software type path does not resolve
  vocabulary,           // NFR label unknown to the conflict matrix
  resolution_required,  // conflicting NFRs need user-assigned priorities
};

const char* to_string(ErrorKind kind);

/// Process exit code for the CLI: validation-like 3, format 4, io 5,
/// config 6, resolution_required 7.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct FieldError {
  std::string field;
  std::string message;

  bool operator==(const FieldError&) const = default;
};

/// Carries every violated constraint of a document, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<FieldError> errors);
  ValidationError(std::string field, std::string message);

  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

using NfrPair = std::pair<std::string, std::string>;

class ResolutionRequiredError : public Error {
 public:
  explicit ResolutionRequiredError(std::vector<NfrPair> pairs);

  const std::vector<NfrPair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<NfrPair> pairs_;
};

}  // namespace apr
