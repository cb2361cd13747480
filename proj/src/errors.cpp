#include "gdkp/errors.hpp"

namespace gdkp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::ImpermeableCoupling: return "ImpermeableCoupling";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::DegenerateBracketing: return "DegenerateBracketing";
    case ErrorCode::GridNotSymmetric: return "GridNotSymmetric";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::BandEdge: return "BandEdge";
    case ErrorCode::GaugeSingular: return "GaugeSingular";
    case ErrorCode::MomentumMismatch: return "MomentumMismatch";
    case ErrorCode::BandNotIsolated: return "BandNotIsolated";
    case ErrorCode::Unimodular: return "Unimodular";
    case ErrorCode::GapUnresolved: return "GapUnresolved";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace gdkp
