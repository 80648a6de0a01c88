#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gqfi {

enum class ErrorCode {
  // symplectic_core
  NotSquareEven,
  NotSymmetric,
  UncertaintyViolated,
  NotSymplectic,
  NumericallyDegenerate,
  EigenvalueBelowFloor,
  YNotPositiveDefinite,
  NotUnitary,
  // siegel
  InvalidGraph,
  InvalidStateRep,
  SingularMobiusDenominator,
  FrameNotOrthogonal,
  // qfi_split
  InconsistentPureDirection,
  DerivativeUnstable,
  PureSpectralSingularity,
  BoundDenominatorVanishes,
  // channels
  DerivativeSingularAtZero,
  GainBelowOne,
  ParameterOutOfDomain,
  DimensionMismatch,
  OutputInvalid,
  // cli_scenarios
  ConfigInvalid,
};

std::string_view to_string(ErrorCode code);

/// Structured rejection: which check failed and by how much. `magnitude` is
/// the offending residual (e.g. the most negative eigenvalue of V + i Omega/2),
/// or zero when no single number applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace gqfi
