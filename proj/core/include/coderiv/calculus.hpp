#pragma once

#include <optional>
#include <utility>

#include "coderiv/problem.hpp"

namespace coderiv {

/// Set-valued map ℝ^n_in ⇉ ℝ^n_out with a polyhedral graph in (x, y) coordinates.
struct PolyMap {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  HPolyhedron graph;
};

/// x ↦ {A x + b}.
PolyMap affine_map(const Matrix& a, const Vec& b);
PolyMap identity_map(std::size_t n);
/// x ↦ K for every x.
PolyMap cone_map(std::size_t n_in, const PolyCone& k);
/// x ↦ {0}.
PolyMap zero_map(std::size_t n_in, std::size_t n_out);

/// p ↦ C(p).
PolyMap constraint_map(const ParametricProblem& problem);
/// p ↦ {p} × C(p).
PolyMap pairing_map(const ParametricProblem& problem);
/// (p,x) ↦ f(p,x) + K for an affine objective.
PolyMap objective_profile_map(const ParametricProblem& problem, const OrderCone& k);

/// Graphs of the assembled maps.
PolyMap pair_of(const PolyMap& h1, const PolyMap& h2);
PolyMap compose(const PolyMap& outer, const PolyMap& inner);
PolyMap sum_of(const PolyMap& h, const PolyMap& l);
PolyMap domain_map(const PolyMap& h);
HPolyhedron domain(const PolyMap& h);

/// {x* : (x*, −y*) ∈ N(gph H, (x̄,ȳ))}. Throws BasePointNotOnGraph.
HPolyhedron map_coderivative(const PolyMap& h, const Vec& x, const Vec& y, const Vec& ystar);

/// D*H₁(x̄,ȳ₁)(y₁*) + D*H₂(x̄,ȳ₂)(y₂*).
HPolyhedron pair_coderivative(const PolyMap& h1, const PolyMap& h2, const Vec& x, const Vec& y1,
                              const Vec& y2, const Vec& y1star, const Vec& y2star);

/// Lexicographically smallest ȳ ∈ H(x̄) ∩ L⁻¹(z̄). Throws NoIntermediatePoint.
Vec intermediate_point(const PolyMap& outer, const PolyMap& inner, const Vec& x, const Vec& z);
/// ⋃_{y* ∈ D*L(ȳ,z̄)(z*)} D*H(x̄,ȳ)(y*).
HPolyhedron chain_coderivative(const PolyMap& outer, const PolyMap& inner, const Vec& x, const Vec& z,
                               const Vec& zstar, std::optional<Vec> ybar = std::nullopt);

/// Lexicographically smallest (ȳ₁,ȳ₂) with ȳ₁ + ȳ₂ = ȳ. Throws NoFeasibleSplit.
std::pair<Vec, Vec> feasible_split(const PolyMap& h, const PolyMap& l, const Vec& x, const Vec& y);
/// cone(dom H − dom L) is a linear subspace.
bool sum_subspace_condition(const PolyMap& h, const PolyMap& l);
/// D*H(x̄,ȳ₁)(y*) + D*L(x̄,ȳ₂)(y*). Throws SubspaceConditionFailed, NoFeasibleSplit.
HPolyhedron sum_coderivative(const PolyMap& h, const PolyMap& l, const Vec& x, const Vec& y,
                             const Vec& ystar, std::optional<std::pair<Vec, Vec>> split = std::nullopt);

/// Lexicographic minimum over a nonempty polyhedron (coordinates unbounded
/// below are fixed at a feasible value). Empty optional when P = ∅.
std::optional<Vec> lex_min_point(const HPolyhedron& poly);

}  // namespace coderiv
