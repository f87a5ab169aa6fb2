#include "rejuv/error.hpp"

namespace rejuv {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::AbsorbingSource: return "AbsorbingSource";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DegenerateSojourn: return "DegenerateSojourn";
    case ErrorKind::InitialAbsorbing: return "InitialAbsorbing";
    case ErrorKind::EmptyAbsorbingSet: return "EmptyAbsorbingSet";
    case ErrorKind::NonAbsorbing: return "NonAbsorbing";
    case ErrorKind::EmptyParallelGroup: return "EmptyParallelGroup";
    case ErrorKind::AbsorbingReached: return "AbsorbingReached";
    case ErrorKind::MetricUndefined: return "MetricUndefined";
    case ErrorKind::ZeroMetric: return "ZeroMetric";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (kind_) {
    case ErrorKind::InvalidDistribution:
    case ErrorKind::InvalidModel:
    case ErrorKind::InvalidParameter:
    case ErrorKind::InitialAbsorbing:
    case ErrorKind::EmptyAbsorbingSet:
    case ErrorKind::EmptyParallelGroup:
    case ErrorKind::Parse:
      return true;
    default:
      return false;
  }
}

}  // namespace rejuv
