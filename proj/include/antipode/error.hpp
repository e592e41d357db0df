#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace antipode {

enum class ErrorCode {
  // metric validation
  ShapeMismatch,
  Asymmetric,
  NegativeDistance,
  NonzeroDiagonal,
  ZeroDistance,
  TriangleViolation,
  BadWeights,
  OffDiagonalUndefined,
  // antipodality
  EvidenceRequired,
  InvalidEvidence,
  NotUniquelyAntipodal,
  NotIsometry,
  InconsistentWithBound,
  DimensionMismatch,
  // graphs
  BadParameter,
  TooLarge,
  Disconnected,
  NotSymmetricConnectionSet,
  ContainsIdentity,
  NoCertificate,
  // continuous
  BadDimension,
  NotPrime,
  // io
  ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `witness()` carries the indices that
/// locate the problem, e.g. (i, j, k) for a triangle violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::move(message)), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace antipode
