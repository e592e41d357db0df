#include "antipode/error.hpp"

namespace antipode {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::OffDiagonalUndefined: return "OffDiagonalUndefined";
    case ErrorCode::EvidenceRequired: return "EvidenceRequired";
    case ErrorCode::InvalidEvidence: return "InvalidEvidence";
    case ErrorCode::NotUniquelyAntipodal: return "NotUniquelyAntipodal";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::InconsistentWithBound: return "InconsistentWithBound";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotSymmetricConnectionSet: return "NotSymmetricConnectionSet";
    case ErrorCode::ContainsIdentity: return "ContainsIdentity";
    case ErrorCode::NoCertificate: return "NoCertificate";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace antipode
