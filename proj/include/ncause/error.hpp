#pragma once

#include <stdexcept>
#include <string>

namespace ncause {

/// Classifies every failure the library can raise.
enum class ErrorCode {
  CycleError,
  DuplicateName,
  UnknownNeuron,
  EmptyTerminals,
  InvalidName,
  ArityError,
  DomainError,
  NameNotFound,
  UnknownCase,
  DuplicateCase,
  EmptyDomain,
  BadThreshold,
  UndecoratableInput,
  DomainMismatch,
  UnknownBuilder,
  ArityTooLarge,
  BlowupError,
};

const char* errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace ncause
