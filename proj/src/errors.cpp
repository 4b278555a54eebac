#include "cruled/errors.hpp"

namespace cruled {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::MissingComponent: return "MissingComponent";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::EvaluationSingularity: return "EvaluationSingularity";
    case ErrorKind::NonRegularCurve: return "NonRegularCurve";
    case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorKind::FrameUndefined: return "FrameUndefined";
    case ErrorKind::DegenerateBaseCurve: return "DegenerateBaseCurve";
    case ErrorKind::CylindricalRuling: return "CylindricalRuling";
    case ErrorKind::DegenerateTangentPlane: return "DegenerateTangentPlane";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cruled
