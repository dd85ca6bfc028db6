#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentzcc {

enum class ErrorCode {
  DivisorOfZero,
  OnNullLine,
  ProfileZero,
  DomainError,
  SingularPoint,
  OnLimitingCurve,
  DegenerateEpsilon,
  OutOfChart,
  NoRealIntersection,
  InvalidMotion,
  MapsToInfinity,
  NoGeodesic,
  CoincidentPoints,
  OutOfDisk,
  DegenerateTuple,
  NearSingular,
  MixedCausality,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code; the
// CLI maps the code name straight into its error json.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace lorentzcc
