#include "allee/errors.hpp"

namespace allee {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateKinetics: return "DegenerateKinetics";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::C1Violated: return "C1Violated";
    case ErrorCode::NotAtHopf: return "NotAtHopf";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::BadSupport: return "BadSupport";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::KernelNotFound: return "KernelNotFound";
    case ErrorCode::FellBackToParent: return "FellBackToParent";
    case ErrorCode::EigSolverStall: return "EigSolverStall";
    case ErrorCode::Escaped: return "Escaped";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadSupport:
      return 2;
    case ErrorCode::NoConvergence:
    case ErrorCode::StepUnderflow:
    case ErrorCode::EigSolverStall:
    case ErrorCode::NotConverged:
    case ErrorCode::Timeout:
    case ErrorCode::Inconclusive:
      return 4;
    default:
      return 3;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace allee
