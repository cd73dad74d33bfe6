#pragma once

#include "coderiv/problem.hpp"

namespace coderiv::detail {

/// {x ∈ C(p) : ȳ − f(p,x) ∈ K} for an affine objective.
HPolyhedron dominated_region(const ParametricProblem& problem, const Vec& p, const Vec& ybar,
                             const PolyCone& k);

/// Floating membership in K with tolerance on every row.
bool in_cone_d(const PolyCone& k, const DVec& v, double tol);

}  // namespace coderiv::detail
