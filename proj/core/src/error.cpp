#include "coderiv/error.hpp"

namespace coderiv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::ConeNotSolid: return "ConeNotSolid";
    case ErrorCode::ConeNotPointed: return "ConeNotPointed";
    case ErrorCode::ConeDegenerate: return "ConeDegenerate";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnboundedScalarization: return "UnboundedScalarization";
    case ErrorCode::UnsupportedConstraintKind: return "UnsupportedConstraintKind";
    case ErrorCode::InfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::NotEfficient: return "NotEfficient";
    case ErrorCode::QualificationFailed: return "QualificationFailed";
    case ErrorCode::DominationNotCertified: return "DominationNotCertified";
    case ErrorCode::MissingTildeCone: return "MissingTildeCone";
    case ErrorCode::BasePointNotOnGraph: return "BasePointNotOnGraph";
    case ErrorCode::NoIntermediatePoint: return "NoIntermediatePoint";
    case ErrorCode::NoFeasibleSplit: return "NoFeasibleSplit";
    case ErrorCode::SubspaceConditionFailed: return "SubspaceConditionFailed";
    case ErrorCode::ACQRequired: return "ACQRequired";
    case ErrorCode::BCQRequired: return "BCQRequired";
    case ErrorCode::FrontierEmpty: return "FrontierEmpty";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
  }
  return "Unknown";
}

}  // namespace coderiv
