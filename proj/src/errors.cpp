#include "ctda/errors.hpp"

namespace ctda {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::NonSurjectiveColouring: return "NonSurjectiveColouring";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotRefinement: return "NotRefinement";
    case ErrorKind::MissingSimplex: return "MissingSimplex";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::NonMonotoneFiltration: return "NonMonotoneFiltration";
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::PartitionFailure: return "PartitionFailure";
    case ErrorKind::NotInterval: return "NotInterval";
    case ErrorKind::NotUnionOfIntervals: return "NotUnionOfIntervals";
    case ErrorKind::NotCollapsible: return "NotCollapsible";
    case ErrorKind::StuckCollapse: return "StuckCollapse";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::GeneralPositionViolation: return "GeneralPositionViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSimplicial:
    case ErrorKind::GeneralPositionViolation:
    case ErrorKind::NotTransverse:
      return 2;
    case ErrorKind::MissingSimplex:
    case ErrorKind::PartitionFailure:
    case ErrorKind::NotInterval:
    case ErrorKind::NotUnionOfIntervals:
    case ErrorKind::NotCollapsible:
    case ErrorKind::StuckCollapse:
    case ErrorKind::NumericalFailure:
      return 3;
    default:
      return 1;
  }
}

}  // namespace ctda
