#pragma once

#include <string>

#include "coderiv/domination.hpp"

namespace coderiv {

/// A subset of the parameter-dual space ℝ^{n_p}.
struct CoderivSet {
  HPolyhedron set;
  Vec ystar;
  Variant variant = Variant::Min;
  std::string provenance;
  bool exact = true;
  /// Nonzero when the data passed through floating-point gradients.
  double tolerance = 0;

  bool empty() const { return set.is_empty(); }
  /// Points plus recession rays and lines.
  PolyGenerators generators() const { return set.generators(); }
};

/// Exact set equality of the carried polyhedra.
bool same_coderivative(const CoderivSet& a, const CoderivSet& b);

struct SubgradientPair {
  Vec pstar;
  Vec xstar;
  bool exact = true;
};

/// (∇_p f ᵀ y*, ∇_x f ᵀ y*) at the base point.
SubgradientPair scalar_subdifferential(const ParametricProblem& problem, const BasePoint& base,
                                       const Vec& ystar);

/// D*C(p̄,x̄)(x*) = {p* : (p*, −x*) ∈ N(gph C, (p̄,x̄))}.
/// Throws UnsupportedConstraintKind, PointNotInSet.
HPolyhedron coderivative_constraint(const ParametricProblem& problem, const BasePoint& base,
                                    const Vec& xstar);

struct QualCondition {
  bool holds = false;
  PolyCone cone;
  std::string note;
};

struct QualReport {
  /// Cone hull of (gph C − dom f) in P × X.
  QualCondition condition_i;
  /// Cone hull of (P − dom C) in P.
  QualCondition condition_ii;
  bool holds() const { return condition_i.holds && condition_ii.holds; }
};

QualReport qualification_check(const ParametricProblem& problem, const BasePoint& base);

/// D*(F+K)(p̄,ȳ)(y*) with K the problem cone (or the override).
/// Empty when y* ∉ K*. Throws QualificationFailed.
CoderivSet profile_coderivative_F(const ParametricProblem& problem, const BasePoint& base,
                                  const Vec& ystar, const OrderCone* cone_override = nullptr);

struct FrontierOptions {
  bool assume_domination = false;
  DominationOptions domination;
};

struct FrontierResult {
  CoderivSet value;
  QualReport qualification;
  std::optional<DominationCertificate> domination;
};

/// Frontier-map coderivative for the min / weak / proper variants.
/// Throws MissingTildeCone, DominationNotCertified, QualificationFailed, NotEfficient.
FrontierResult frontier_coderivative_detailed(const ParametricProblem& problem, const BasePoint& base,
                                              const Vec& ystar, Variant variant,
                                              const FrontierOptions& options = {});
CoderivSet frontier_coderivative(const ParametricProblem& problem, const BasePoint& base,
                                 const Vec& ystar, Variant variant, const FrontierOptions& options = {});

}  // namespace coderiv
