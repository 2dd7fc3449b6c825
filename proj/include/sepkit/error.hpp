#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepkit {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  ZeroElement,
  SchemaError,
  SelfLoop,
  Disconnected,
  UnknownId,
  BadFieldElement,
  EmptySelection,
  DisconnectedSelection,
  NontrivialRepresentation,
  SaddleNodePresent,
  NotATree,
  HypothesisUnmet,
  GorensteinInconsistent,
  ValidationFailed,
  BadParams,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto sepkit_status values.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace sepkit
