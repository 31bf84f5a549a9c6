#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abelfourier {

enum class ErrorCode {
  RankMismatch,
  DimensionMismatch,
  NonIntegralResult,
  NonDivisible,
  NotSymmetric,
  NotAlternating,
  SingularPolarization,
  ComplexStructureInvalid,
  RiemannRelationViolated,
  InvalidType,
  NotIsogeny,
  NotHolomorphic,
  NoComplexStructure,
  NotHomogeneous,
  NotHodge,
  ImageNotInHodge,
  UnknownCheck,
  UnsupportedParams,
  PreconditionViolated,
  ParseError,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::NonDivisible: return "NonDivisible";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::SingularPolarization: return "SingularPolarization";
    case ErrorCode::ComplexStructureInvalid: return "ComplexStructureInvalid";
    case ErrorCode::RiemannRelationViolated: return "RiemannRelationViolated";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::NotIsogeny: return "NotIsogeny";
    case ErrorCode::NotHolomorphic: return "NotHolomorphic";
    case ErrorCode::NoComplexStructure: return "NoComplexStructure";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotHodge: return "NotHodge";
    case ErrorCode::ImageNotInHodge: return "ImageNotInHodge";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::UnsupportedParams: return "UnsupportedParams";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code names the violated contract;
/// what() is "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace abelfourier
