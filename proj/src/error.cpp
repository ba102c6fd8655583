#include "ncause/error.hpp"

namespace ncause {

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownNeuron: return "UnknownNeuron";
    case ErrorCode::EmptyTerminals: return "EmptyTerminals";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NameNotFound: return "NameNotFound";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::DuplicateCase: return "DuplicateCase";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::BadThreshold: return "BadThreshold";
    case ErrorCode::UndecoratableInput: return "UndecoratableInput";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnknownBuilder: return "UnknownBuilder";
    case ErrorCode::ArityTooLarge: return "ArityTooLarge";
    case ErrorCode::BlowupError: return "BlowupError";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(errorCodeName(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ncause
