#pragma once

#include <functional>
#include <vector>

namespace coderiv::detail {

using DVec = std::vector<double>;

/// Compass search over ±e_i and ±(e_i ± e_j): halves the step on failure.
/// Infeasible trial points are rejected, so the start must be feasible.
DVec pattern_search(const std::function<double(const DVec&)>& objective,
                    const std::function<bool(const DVec&)>& feasible, DVec start,
                    double step = 1.0, double min_step = 1e-10, std::size_t max_evals = 400000);

}  // namespace coderiv::detail
