#include "qhyp/types.hpp"

namespace qhyp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonGenericParameter: return "NonGenericParameter";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::ReductionMismatch: return "ReductionMismatch";
    case ErrorCode::ReductionTooDeep: return "ReductionTooDeep";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegenerateZeros: return "DegenerateZeros";
    case ErrorCode::IndexCollision: return "IndexCollision";
    case ErrorCode::EigenNoConvergence: return "EigenNoConvergence";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorCode::CollisionDetected: return "CollisionDetected";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
  }
  return "UnknownError";
}

}  // namespace qhyp
