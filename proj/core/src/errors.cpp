#include "ptsim/errors.hpp"

namespace ptsim {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::NotInvolutoryP: return "NotInvolutoryP";
    case ErrorCode::NotInvolutoryT: return "NotInvolutoryT";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::NotPTSymmetric: return "NotPTSymmetric";
    case ErrorCode::InconsistentSpectrum: return "InconsistentSpectrum";
    case ErrorCode::DefectiveInput: return "DefectiveInput";
    case ErrorCode::NotUnbroken: return "NotUnbroken";
    case ErrorCode::NotIntertwining: return "NotIntertwining";
    case ErrorCode::DegenerateSpectrumUnsupported: return "DegenerateSpectrumUnsupported";
    case ErrorCode::EtaNotGreaterThanI: return "EtaNotGreaterThanI";
    case ErrorCode::SuppliedH1NotHermitian: return "SuppliedH1NotHermitian";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInSubspace: return "NotInSubspace";
    case ErrorCode::InvalidSubspaceMap: return "InvalidSubspaceMap";
    case ErrorCode::ZeroMap: return "ZeroMap";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ZeroFinalState: return "ZeroFinalState";
    case ErrorCode::ZeroBranch: return "ZeroBranch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace ptsim
