#pragma once

#include <string>
#include <vector>

#include "coderiv/coderivative.hpp"

namespace coderiv {

struct FamilyActivity {
  std::size_t family = 0;
  /// g_t(p̄,x̄) = 0 for every t in the interval.
  bool whole_interval = false;
  std::vector<Scalar> roots;
  /// Irrational roots, accurate to 1e−12.
  std::vector<double> float_roots;
};

struct ActiveSet {
  /// Indices into the finite constraint list (rows, or builtin names).
  std::vector<std::size_t> rows;
  std::vector<FamilyActivity> families;
  bool irrational = false;

  bool empty() const;
};

/// Throws InfeasiblePoint when the base is not in gph C.
ActiveSet active_set(const ParametricProblem& problem, const BasePoint& base);

struct AcqResult {
  bool holds = false;
  PolyCone tangent;
  PolyCone linearization;
  bool exact = true;
};

AcqResult acq_check(const ParametricProblem& problem, const BasePoint& base);

/// Λ(x*) in the multiplier space of the finite (reduced) constraint list.
struct MultiplierPolyhedron {
  HPolyhedron lambda;
  /// Column i: ∇_p g_i and ∇_x g_i at the base.
  std::vector<Vec> grad_p;
  std::vector<Vec> grad_x;
  std::vector<Relation> rel;
  std::vector<bool> active;
  bool exact = true;
};

/// Throws ACQRequired.
MultiplierPolyhedron multiplier_polyhedron(const ParametricProblem& problem, const BasePoint& base,
                                           const Vec& xstar);
/// {Σ λ_i ∇_p g_i : λ ∈ Λ}.
HPolyhedron image_p_star(const MultiplierPolyhedron& mult);

/// Cone generated by the active gradients (u*, v*) ∈ P × X.
/// Throws UnsupportedConstraintKind for smooth systems.
PolyCone bcq_cone(const ParametricProblem& problem, const BasePoint& base);
/// N(gph C) ⊆ bcq_cone.
bool bcq_check(const ParametricProblem& problem, const BasePoint& base);

/// {∇_p f ᵀy* + u* : (u*, −∇_x f ᵀy*) ∈ bcq_cone}.
/// Throws BCQRequired, DominationNotCertified, QualificationFailed.
CoderivSet semi_infinite_frontier_coderivative(const ParametricProblem& problem, const BasePoint& base,
                                               const Vec& ystar, const FrontierOptions& options = {});

}  // namespace coderiv
