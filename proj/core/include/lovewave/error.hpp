#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lovewave {

enum class ErrorCode {
  MissingKey,
  NonFinite,
  Duplicate,
  UnknownKey,
  Syntax,
  InvalidMaterial,
  NonUnitDirection,
  NonPositiveEigenvalue,
  DegenerateGrid,
  LinearizationSingular,
  SpeedOutOfRange,
  QuadratureNotConverged,
  NotStabilizing,
  NoSignChange,
  DomainViolation,
  NotSingular,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the
// message holds the human-readable detail (offending key, speed, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace lovewave
