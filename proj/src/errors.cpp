#include "oswave/errors.hpp"

namespace oswave {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::OutOfBasin: return "OutOfBasin";
    case ErrorKind::RiccatiBlowup: return "RiccatiBlowup";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorKind::CriticalLayerSingularity: return "CriticalLayerSingularity";
    case ErrorKind::BranchBreak: return "BranchBreak";
    case ErrorKind::WindowNotFound: return "WindowNotFound";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::SingularSolve: return "SingularSolve";
  }
  return "Unknown";
}

}  // namespace oswave
