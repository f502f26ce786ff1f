#include "lovewave/error.hpp"

namespace lovewave {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Duplicate: return "Duplicate";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::InvalidMaterial: return "InvalidMaterial";
    case ErrorCode::NonUnitDirection: return "NonUnitDirection";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::LinearizationSingular: return "LinearizationSingular";
    case ErrorCode::SpeedOutOfRange: return "SpeedOutOfRange";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NotStabilizing: return "NotStabilizing";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace lovewave
