#pragma once

#include <stdexcept>
#include <string>

namespace jsec {

enum class ErrorCode {
  Unbounded,
  TooLarge,
  EmptySection,
  OriginNotInterior,
  DegenerateDim,
  EmptyInterior,
  NotConverged,
  NotInJohnPosition,
  InfeasibleDecomposition,
  TooManyGenerators,
  IndexOutOfRange,
  GenerationFailed,
  IoError,
  InvalidBody,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptySection: return "EmptySection";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::DegenerateDim: return "DegenerateDim";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NotInJohnPosition: return "NotInJohnPosition";
    case ErrorCode::InfeasibleDecomposition: return "InfeasibleDecomposition";
    case ErrorCode::TooManyGenerators: return "TooManyGenerators";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidBody: return "InvalidBody";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jsec
