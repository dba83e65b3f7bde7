#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ctda {

enum class ErrorKind {
  DuplicatePoint,
  NonSurjectiveColouring,
  DimensionMismatch,
  LengthMismatch,
  DegenerateInput,
  SizeLimitExceeded,
  NotSimplicial,
  DimensionTooLarge,
  NotRefinement,
  MissingSimplex,
  NumericalFailure,
  NoIntersection,
  NonMonotoneFiltration,
  InvalidGamma,
  PartitionFailure,
  NotInterval,
  NotUnionOfIntervals,
  NotCollapsible,
  StuckCollapse,
  NotTransverse,
  GeneralPositionViolation,
  InvalidArgument,
};

const char* error_name(ErrorKind kind);

// Exit code used by the command line tool: 1 invalid input, 2 general
// position violation, 3 falsified invariant.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<int> witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<int> witness_;
};

}  // namespace ctda
