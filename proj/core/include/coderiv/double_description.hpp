#pragma once

#include <vector>

#include "coderiv/matrix.hpp"

namespace coderiv {

/// Finite generating system of a polyhedral cone: cone(rays) + span(lines).
/// Rays are extreme modulo the lineality space; both lists are canonical
/// (primitive integer vectors, lexicographically sorted; lines have a
/// positive leading entry and are reduced to echelon form).
struct ConeGenerators {
  std::size_t dim = 0;
  std::vector<Vec> rays;
  std::vector<Vec> lines;

  bool is_origin() const { return rays.empty() && lines.empty(); }
};

/// Motzkin double-description: generators of {x : A x ≤ 0, E x = 0}.
ConeGenerators cone_generators(const Matrix& ineq, const Matrix& eq);

/// Inverse direction: halfspace description {x : A x ≤ 0, E x = 0} of
/// cone(rays) + span(lines). Computed as generators of the polar cone.
struct ConeHalfspaces {
  Matrix ineq;
  Matrix eq;
};
ConeHalfspaces cone_halfspaces(const ConeGenerators& gens);

/// Puts a generator list into canonical form (used after manual assembly).
ConeGenerators canonical_generators(std::size_t dim, std::vector<Vec> rays,
                                    std::vector<Vec> lines);

}  // namespace coderiv
