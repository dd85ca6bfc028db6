#include "lorentzcc/error.hpp"

namespace lorentzcc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisorOfZero: return "DivisorOfZero";
    case ErrorCode::OnNullLine: return "OnNullLine";
    case ErrorCode::ProfileZero: return "ProfileZero";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::OnLimitingCurve: return "OnLimitingCurve";
    case ErrorCode::DegenerateEpsilon: return "DegenerateEpsilon";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::NoRealIntersection: return "NoRealIntersection";
    case ErrorCode::InvalidMotion: return "InvalidMotion";
    case ErrorCode::MapsToInfinity: return "MapsToInfinity";
    case ErrorCode::NoGeodesic: return "NoGeodesic";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::OutOfDisk: return "OutOfDisk";
    case ErrorCode::DegenerateTuple: return "DegenerateTuple";
    case ErrorCode::NearSingular: return "NearSingular";
    case ErrorCode::MixedCausality: return "MixedCausality";
  }
  return "Unknown";
}

}  // namespace lorentzcc
