#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chebknot {

enum class ErrorCode {
  BadArgs,
  AmbientMismatch,
  NegativeOperand,
  NotQuadratic,
  InternalInconsistency,
  RoundingAmbiguous,
  TooLarge,
  SingularCurve,
  EmptyAudit,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can turn it into a machine-readable record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chebknot
