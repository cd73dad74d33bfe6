#pragma once

#include <string_view>
#include <vector>

#include "coderiv/problem.hpp"

namespace coderiv {

struct PointCloud {
  std::size_t dim = 0;
  std::vector<Vec> points;
};

enum class EfficiencyKind { Min, WMin, PrMin };
std::string_view to_string(EfficiencyKind kind);

struct EfficiencyResult {
  EfficiencyKind kind = EfficiencyKind::Min;
  /// Indices into the input cloud (first occurrence of duplicates), ascending.
  std::vector<std::size_t> indices;
  /// PrMin only: certificate weight per index, primitive integer vector.
  std::vector<Vec> weights;
};

/// Throws EmptyCloud.
EfficiencyResult min_points(const PointCloud& cloud, const OrderCone& k);
/// Throws EmptyCloud, ConeNotSolid.
EfficiencyResult wmin_points(const PointCloud& cloud, const OrderCone& k);
/// Throws EmptyCloud, ConeDegenerate.
EfficiencyResult prmin_points(const PointCloud& cloud, const OrderCone& k);

/// Normalized weights (coordinates sum to 1 where possible) on the simplex
/// spanned by the generators of K*. Interior grid by default; the boundary
/// variant adds the generators themselves.
std::vector<Vec> weight_grid(const OrderCone& k, std::size_t count = 21, bool boundary = false);

struct FrontierSample {
  PointCloud cloud;
  /// Preimages x of the cloud points, aligned with cloud.points.
  std::vector<Vec> preimages;
  /// Weights whose scalarization was unbounded below.
  std::vector<Vec> unbounded;
  bool exact = true;
};

/// Weighted-sum minimization of f(p,·) over C(p) for each weight.
/// Unbounded weights are recorded; throws Infeasible when C(p) = ∅ and
/// UnboundedScalarization when every weight is unbounded.
FrontierSample frontier_sample_detailed(const ParametricProblem& problem, const Vec& p,
                                        const std::vector<Vec>& weights);
PointCloud frontier_sample(const ParametricProblem& problem, const Vec& p,
                           const std::vector<Vec>& weights);

}  // namespace coderiv
