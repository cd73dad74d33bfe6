#pragma once

#include <optional>

#include "coderiv/matrix.hpp"

namespace coderiv::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Scalar value;  // meaningful when Optimal
  Vec x;         // optimizer when Optimal, a feasible point when Unbounded
};

/// Exact two-phase primal simplex with Bland's rule:
///   maximize cᵀx  s.t.  A x ≤ b,  E x = d,  x free.
Result maximize(const Vec& c, const Matrix& A, const Vec& b, const Matrix& E, const Vec& d);

inline Result minimize(const Vec& c, const Matrix& A, const Vec& b, const Matrix& E,
                       const Vec& d) {
  Result r = maximize(neg(c), A, b, E, d);
  if (r.status == Status::Optimal) r.value = -r.value;
  return r;
}

std::optional<Vec> feasible_point(const Matrix& A, const Vec& b, const Matrix& E, const Vec& d);

}  // namespace coderiv::lp
