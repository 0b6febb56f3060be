#pragma once
// Error taxonomy shared by all modules.  Every failure carries a stable
// machine-readable code (used for CLI exit-code partitioning and report
// serialization) plus a human message.

#include <stdexcept>
#include <string>

namespace blaschke2d {

// Coarse classes; the CLI maps each class to one exit code.
enum class ErrorClass {
    Parse,       // malformed config text
    Validation,  // well-formed input violating a documented invariant
    Domain,      // operation preconditions violated / degenerate configuration
    Resource,    // term-count or refinement budget exhausted
    Numeric,     // solver/iteration failures
    Io,          // filesystem problems
};

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), cls_(cls), code_(std::move(code)) {}
    ErrorClass error_class() const { return cls_; }
    const std::string& code() const { return code_; }

  private:
    ErrorClass cls_;
    std::string code_;
};

#define BLASCHKE2D_ERROR(NAME, CLASS)                                          \
    class NAME : public Error {                                                \
      public:                                                                  \
        explicit NAME(const std::string& msg) : Error(ErrorClass::CLASS, #NAME, msg) {} \
    }

BLASCHKE2D_ERROR(ZeroOutsideDisc, Validation);
BLASCHKE2D_ERROR(DegenerateDeterminant, Validation);
BLASCHKE2D_ERROR(EmptyFactor, Validation);
BLASCHKE2D_ERROR(ValidationError, Validation);
BLASCHKE2D_ERROR(InvariantViolation, Validation);

BLASCHKE2D_ERROR(DegenerateConfiguration, Domain);
BLASCHKE2D_ERROR(ZeroAtOrigin, Domain);
BLASCHKE2D_ERROR(CoincidentZeros, Domain);
BLASCHKE2D_ERROR(PreconditionViolation, Domain);

BLASCHKE2D_ERROR(ResourceBudget, Resource);
BLASCHKE2D_ERROR(RefinementBudget, Resource);

BLASCHKE2D_ERROR(NonConvergence, Numeric);
BLASCHKE2D_ERROR(DegenerateSystem, Numeric);
BLASCHKE2D_ERROR(SolverDeficiency, Numeric);
BLASCHKE2D_ERROR(LiftDiscontinuity, Numeric);

BLASCHKE2D_ERROR(IoError, Io);

#undef BLASCHKE2D_ERROR

// ParseError keeps the source location of the offending token.
class ParseError : public Error {
  public:
    ParseError(const std::string& msg, int line, int column = 0)
        : Error(ErrorClass::Parse, "ParseError",
                msg + " (line " + std::to_string(line) +
                    (column > 0 ? ", column " + std::to_string(column) : "") + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

inline int exit_code_for(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::Parse: return 2;
        case ErrorClass::Validation: return 3;
        case ErrorClass::Domain: return 4;
        case ErrorClass::Resource: return 5;
        case ErrorClass::Numeric: return 6;
        case ErrorClass::Io: return 7;
    }
    return 1;
}

}  // namespace blaschke2d
