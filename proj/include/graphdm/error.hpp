#ifndef GRAPHDM_ERROR_HPP
#define GRAPHDM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace graphdm {

enum class ErrorKind {
  // graph construction
  SelfLoop,
  DuplicateEdge,
  IndexOutOfRange,
  // matrix layer
  DimensionMismatch,
  NotHermitian,
  // density constructors
  EmptyGraph,
  HermiticityViolation,
  NotPSD,
  TraceViolation,
  // decomposition builders
  NotNearestPoint,
  PairingFailure,
  NotPerfectMatching,
  NotPerfectEntanglingMatching,
  NotBlockStructured,
  WrongQ,
  ReconstructionFailure,
  // deciders and sweeps
  DimensionNotSupported,
  TooLarge,
  DegreeConditionFails,
  BudgetExceeded,
  // file I/O
  ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Internal inconsistencies map to exit code 2 in the CLI; everything else
  // is a user error (exit code 1).
  bool internal() const {
    return kind_ == ErrorKind::PairingFailure ||
           kind_ == ErrorKind::ReconstructionFailure;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace graphdm

#endif
