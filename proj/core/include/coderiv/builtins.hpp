#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coderiv {

using DVec = std::vector<double>;
using DMatrix = std::vector<DVec>;

/// Named smooth objective with an analytic Jacobian over (p, x).
struct BuiltinObjective {
  std::string name;
  std::size_t min_p = 0, min_x = 0, n_y = 0;
  std::function<DVec(std::span<const double>, std::span<const double>)> value;
  /// n_y rows, each of length n_p + n_x.
  std::function<DMatrix(std::span<const double>, std::span<const double>)> jacobian;
};

/// Named smooth convex inequality g(p, x) ≤ 0.
struct BuiltinConstraint {
  std::string name;
  std::size_t min_p = 0, min_x = 0;
  std::function<double(std::span<const double>, std::span<const double>)> value;
  /// Length n_p + n_x.
  std::function<DVec(std::span<const double>, std::span<const double>)> gradient;
  /// A point of C(p) for this constraint alone, or empty when C(p) = ∅.
  std::function<std::vector<double>(std::span<const double>, std::size_t n_x)> feasible_point;
  bool feasible_at(std::span<const double> p) const;
};

/// Throws UnknownBuiltin.
const BuiltinObjective& builtin_objective(std::string_view name);
const BuiltinConstraint& builtin_constraint(std::string_view name);

std::vector<std::string> builtin_objective_names();
std::vector<std::string> builtin_constraint_names();

}  // namespace coderiv
