#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ehp {

// Base class for numerical failures raised by the library. Usage errors
// (bad construction parameters, malformed options) throw InvalidArgument
// instead so callers can map the two onto different exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A coefficient expected to carry the problem was numerically zero.
struct DegenerateCubic : Error {
  using Error::Error;
};

struct NonFiniteInput : Error {
  using Error::Error;
};

// Degenerate solve reduced to 0 == D with D != 0.
struct NoSolution : Error {
  using Error::Error;
};

// Degenerate solve reduced to 0 == 0; every value is a solution.
struct IndeterminateSolution : Error {
  using Error::Error;
};

struct EmptyRootSet : Error {
  using Error::Error;
};

struct NoRealRoot : Error {
  using Error::Error;
};

struct NonFiniteState : Error {
  using Error::Error;
};

struct StepSizeUnderflow : Error {
  using Error::Error;
};

struct MaxStepsExceeded : Error {
  using Error::Error;
};

struct ResidualCheckFailed : Error {
  double r28;
  double r29;
  double r30;
  ResidualCheckFailed(double r28_, double r29_, double r30_)
      : Error("step residual check failed: r28=" + std::to_string(r28_) +
              " r29=" + std::to_string(r29_) + " r30=" + std::to_string(r30_)),
        r28(r28_), r29(r29_), r30(r30_) {}
};

// Wraps a step failure with the index of the step that raised it.
struct IntegrationError : Error {
  std::size_t step_index;
  IntegrationError(std::size_t index, const std::string& reason)
      : Error("step " + std::to_string(index) + ": " + reason),
        step_index(index) {}
};

}  // namespace ehp
