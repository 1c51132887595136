#include "minkgauss/error.hpp"

namespace minkgauss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotLightlike: return "NotLightlike";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DivisionNearZero: return "DivisionNearZero";
    case ErrorCode::MismatchedBase: return "MismatchedBase";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::OrderExhausted: return "OrderExhausted";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotLorentzian: return "NotLorentzian";
    case ErrorCode::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::FrameBranchSwitch: return "FrameBranchSwitch";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotLightlikeDirection: return "NotLightlikeDirection";
    case ErrorCode::NotNullCurve: return "NotNullCurve";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::UnknownSurface: return "UnknownSurface";
  }
  return "Unknown";
}

}  // namespace minkgauss
