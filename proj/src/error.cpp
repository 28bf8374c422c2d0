#include "chebknot/error.hpp"

namespace chebknot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadArgs:
      return "BadArgs";
    case ErrorCode::AmbientMismatch:
      return "AmbientMismatch";
    case ErrorCode::NegativeOperand:
      return "NegativeOperand";
    case ErrorCode::NotQuadratic:
      return "NotQuadratic";
    case ErrorCode::InternalInconsistency:
      return "InternalInconsistency";
    case ErrorCode::RoundingAmbiguous:
      return "RoundingAmbiguous";
    case ErrorCode::TooLarge:
      return "TooLarge";
    case ErrorCode::SingularCurve:
      return "SingularCurve";
    case ErrorCode::EmptyAudit:
      return "EmptyAudit";
  }
  return "Unknown";
}

}  // namespace chebknot
