#pragma once

#include <stdexcept>
#include <string>

namespace rejuv {

enum class ErrorKind {
  InvalidDistribution,
  InvalidModel,
  InvalidParameter,
  NonConvergence,
  AbsorbingSource,
  Reducible,
  DegenerateSojourn,
  InitialAbsorbing,
  EmptyAbsorbingSet,
  NonAbsorbing,
  EmptyParallelGroup,
  AbsorbingReached,
  MetricUndefined,
  ZeroMetric,
  Parse,
  BudgetExceeded,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by malformed input rather than by numerics.
  bool is_input_error() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace rejuv
