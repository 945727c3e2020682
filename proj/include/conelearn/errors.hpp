#pragma once

#include <stdexcept>
#include <string>

namespace conelearn {

enum class ErrorKind {
  NumericalFailure,          // iteration caps, non-convergence
  DependentInput,            // rank-deficient vector sets
  SingularSystem,            // linear solve pivot breakdown
  UnsupportedRepresentation, // region form without a circumcenter rule
  SamplingFailure,           // rejection sampling acceptance too low
  InconsistentFeedback,      // expert action not optimal for the claimed cost
  NotPointed,                // aperture >= pi/2 where pointedness is required
  DegenerateCut,             // cut direction parallel to the cone axis
  UnsupportedDimension,      // construction only defined for specific d
  InternalInvariant,         // violated precondition that callers must maintain
  ConfigError,               // bad run configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace conelearn
