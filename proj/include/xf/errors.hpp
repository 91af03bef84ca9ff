#pragma once

#include <stdexcept>
#include <string>

namespace xf {

// Base class for all laboratory errors. Each concrete type corresponds to a
// distinct failure mode a caller may want to catch and handle separately.
class Error : public std::runtime_error {
public:
  Error(const char* kind, const std::string& msg)
      : std::runtime_error(std::string(kind) + ": " + msg), kind_(kind) {}
  const char* kind() const noexcept { return kind_; }

private:
  const char* kind_;
};

#define XF_DEFINE_ERROR(NAME)                                        \
  class NAME : public Error {                                        \
  public:                                                            \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}     \
  }

// Grid and state construction
XF_DEFINE_ERROR(InvalidExtent);
XF_DEFINE_ERROR(ResolutionTooSmall);
XF_DEFINE_ERROR(NonPowerOfTwo);
XF_DEFINE_ERROR(GridMismatch);
XF_DEFINE_ERROR(ZeroField);
XF_DEFINE_ERROR(DomainTooSmall);

// Operator application
XF_DEFINE_ERROR(BackendUnsupported);
XF_DEFINE_ERROR(InvalidParameter);
XF_DEFINE_ERROR(NonMonotoneBridge);

// Propagation
XF_DEFINE_ERROR(NearSingularTime);
XF_DEFINE_ERROR(AliasedPhase);
XF_DEFINE_ERROR(StepTooLarge);
XF_DEFINE_ERROR(QuadratureFailure);
XF_DEFINE_ERROR(TailTooLong);

// Linear algebra
XF_DEFINE_ERROR(SingularSystem);
XF_DEFINE_ERROR(ConvergenceFailure);
XF_DEFINE_ERROR(TruncationTail);
XF_DEFINE_ERROR(NotAnEigenpair);
XF_DEFINE_ERROR(MissingConstants);
XF_DEFINE_ERROR(ApproximationDegreeExceeded);

// Persistence and configuration
XF_DEFINE_ERROR(EmptyRecord);

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error("ParseError",
              msg + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line(line), column(column) {}
  int line;
  int column;
};

class ValidationError : public Error {
public:
  ValidationError(const std::string& field, const std::string& msg)
      : Error("ValidationError", field + ": " + msg), field(field) {}
  std::string field;
};

#undef XF_DEFINE_ERROR

} // namespace xf
