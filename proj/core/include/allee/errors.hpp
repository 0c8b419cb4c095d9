#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace allee {

enum class ErrorCode {
  InvalidArgument,
  DegenerateKinetics,
  OutOfRange,
  NoSignChange,
  C1Violated,
  NotAtHopf,
  StepSizeUnderflow,
  Inconclusive,
  BracketInvalid,
  NoRoot,
  NotApplicable,
  HypothesisFailed,
  BadSupport,
  NonFinite,
  NoCrossing,
  NoConvergence,
  SingularJacobian,
  StepUnderflow,
  KernelNotFound,
  FellBackToParent,
  EigSolverStall,
  Escaped,
  Timeout,
  NotConverged,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Process exit status for a failure category: 2 config, 3 numerical, 4 not converged.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace allee
