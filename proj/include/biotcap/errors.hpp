#pragma once

#include <stdexcept>
#include <string>

namespace biotcap {

enum class ErrorCode {
  NonInvertible,
  NotSPD,
  OutOfConvergenceRadius,
  Singular,
  NonCoaxial,
  OutOfRange,
  GradientSingular,
  LockingMaterial,
  NotPositiveDefinite,
  NonInvertibleRegime,
  DriftNotConverged,
  NewtonNotConverged,
  ParseError,
  ValidationError,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception type; the C surface maps it onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace biotcap
