#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptsim {

enum class ErrorCode {
  // shape / type
  NonSquare,
  DimensionMismatch,
  WrongDimension,
  InvalidArgument,
  ParseError,
  // numerical
  NumericalFailure,
  // linear algebra domain
  NotHermitian,
  NotPSD,
  NotPositiveDefinite,
  DependentInput,
  SingularFrame,
  // PT structure
  NotInvolutoryP,
  NotInvolutoryT,
  NonCommuting,
  NotPTSymmetric,
  InconsistentSpectrum,
  DefectiveInput,
  NotUnbroken,
  // metric
  NotIntertwining,
  DegenerateSpectrumUnsupported,
  // dilation
  EtaNotGreaterThanI,
  SuppliedH1NotHermitian,
  ZeroVector,
  NotInSubspace,
  // completion
  InvalidSubspaceMap,
  ZeroMap,
  NotProjection,
  NotNormalized,
  // pipeline / experiment
  ZeroFinalState,
  ZeroBranch,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace ptsim
