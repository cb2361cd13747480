#pragma once

#include <stdexcept>
#include <string>

namespace gdkp {

enum class ErrorCode {
  InvalidParameter,
  NotUnitary,
  NumericalDegeneracy,
  ImpermeableCoupling,
  WindowTooSmall,
  DegenerateBracketing,
  GridNotSymmetric,
  NotAnEigenvalue,
  BandEdge,
  GaugeSingular,
  MomentumMismatch,
  BandNotIsolated,
  Unimodular,
  GapUnresolved,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gdkp
