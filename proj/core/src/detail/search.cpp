#include "detail/search.hpp"

#include <cmath>

namespace coderiv::detail {

DVec pattern_search(const std::function<double(const DVec&)>& objective,
                    const std::function<bool(const DVec&)>& feasible, DVec x, double step,
                    double min_step, std::size_t max_evals) {
  const std::size_t n = x.size();
  if (n == 0) return x;
  std::vector<DVec> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    DVec d(n, 0.0);
    d[i] = 1;
    dirs.push_back(d);
    d[i] = -1;
    dirs.push_back(d);
  }
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          DVec d(n, 0.0);
          d[i] = si * r;
          d[j] = sj * r;
          dirs.push_back(d);
        }
  double fx = objective(x);
  std::size_t evals = 1;
  DVec trial(n);
  while (step >= min_step && evals < max_evals) {
    bool improved = false;
    for (const auto& d : dirs) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * d[i];
      if (!feasible(trial)) continue;
      double ft = objective(trial);
      ++evals;
      if (ft < fx) {
        x = trial;
        fx = ft;
        improved = true;
        break;
      }
    }
    if (!improved) step /= 2;
  }
  return x;
}

}  // namespace coderiv::detail
