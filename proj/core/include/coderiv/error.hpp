#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coderiv {

enum class ErrorCode {
  PointNotInSet,
  DimensionMismatch,
  SchemaError,
  EmptyCloud,
  ConeNotSolid,
  ConeNotPointed,
  ConeDegenerate,
  Infeasible,
  UnboundedScalarization,
  UnsupportedConstraintKind,
  InfeasiblePoint,
  NotEfficient,
  QualificationFailed,
  DominationNotCertified,
  MissingTildeCone,
  BasePointNotOnGraph,
  NoIntermediatePoint,
  NoFeasibleSplit,
  SubspaceConditionFailed,
  ACQRequired,
  BCQRequired,
  FrontierEmpty,
  UnknownBuiltin,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coderiv
