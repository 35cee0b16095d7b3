#pragma once

#include <stdexcept>
#include <string>

namespace wn {

// Every failure the library can raise, so callers can branch on the cause
// (and the CLI can map causes to exit codes) without string matching.
enum class Err {
  NonFiniteSample,           // a sampled value came back NaN/Inf
  StepOutOfDomain,           // difference step leaves the grid and zero-extension is off
  DegenStep,                 // difference step is zero in some coordinate
  DomainTooSmall,            // functional needs a larger half-width than the grid has
  MissingDerivative,         // functional needs derivative samples that were not provided
  MissingPartial,            // 2-d functional needs a partial-derivative field that is absent
  BadIndex,                  // index outside the stored sample range
  EnvelopeDirectionMismatch, // functional fed an envelope of the wrong monotonicity kind
  PreconditionGap,           // hypothesis on the vanishing radius around the origin not met
  ZeroDerivativeScale,       // scale function is identically zero where the sup is formed
  EnvelopeGridMismatch,      // envelopes that must share abscissae do not
  InsufficientStates,        // convergence diagnosis needs at least three ladder states
  GridMismatch,              // grids that must agree (domain, size) do not
  BadExponent,               // decay exponent outside the admissible range
  BadParams,                 // family/config parameters fail validation
  SingularAtOrigin,          // transform integrand grows without bound at the inner cells
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonFiniteSample:           return "NonFiniteSample";
    case Err::StepOutOfDomain:           return "StepOutOfDomain";
    case Err::DegenStep:                 return "DegenStep";
    case Err::DomainTooSmall:            return "DomainTooSmall";
    case Err::MissingDerivative:         return "MissingDerivative";
    case Err::MissingPartial:            return "MissingPartial";
    case Err::BadIndex:                  return "BadIndex";
    case Err::EnvelopeDirectionMismatch: return "EnvelopeDirectionMismatch";
    case Err::PreconditionGap:           return "PreconditionGap";
    case Err::ZeroDerivativeScale:       return "ZeroDerivativeScale";
    case Err::EnvelopeGridMismatch:      return "EnvelopeGridMismatch";
    case Err::InsufficientStates:        return "InsufficientStates";
    case Err::GridMismatch:              return "GridMismatch";
    case Err::BadExponent:               return "BadExponent";
    case Err::BadParams:                 return "BadParams";
    case Err::SingularAtOrigin:          return "SingularAtOrigin";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

// Data-dependent failures (bad numbers at runtime) versus misconfiguration;
// the CLI exits 3 for the former and 2 for the latter.
inline bool is_numerical(Err e) {
  switch (e) {
    case Err::NonFiniteSample:
    case Err::SingularAtOrigin:
    case Err::ZeroDerivativeScale:
      return true;
    default:
      return false;
  }
}

[[noreturn]] inline void raise(Err code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace wn
