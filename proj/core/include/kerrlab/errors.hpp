#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kerrlab {

enum class ErrorCode {
  ExtremalOrSuper,
  NonpositiveMass,
  ChartMismatch,
  HorizonSingular,
  BlendInfeasible,
  ClassificationAmbiguous,
  InadmissibleFrequency,
  CoverGap,
  ConstantSearchFailed,
  PositivityFailure,
  BoundarySignFailure,
  BelowHorizon,
  CFLViolation,
  NaNDetected,
  StiffFailure,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class KerrError : public std::runtime_error {
 public:
  KerrError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kerrlab
