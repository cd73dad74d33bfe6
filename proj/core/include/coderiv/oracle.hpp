#pragma once

#include <cstdint>
#include <vector>

#include "coderiv/efficiency.hpp"

namespace coderiv {

struct EpiOptions {
  double delta = 0.1;
  /// Grid points per parameter axis.
  std::size_t grid = 9;
  /// Interior weights for the frontier at each grid parameter.
  std::size_t weights = 5;
  /// Extra scalarization weights (typically the queried y*).
  std::vector<Vec> extra_weights;
  std::size_t cap = 20000;
  std::uint64_t seed = 0x5EED;
};

/// Sampled neighbourhood of (p̄, ȳ) in gph(frontier + K).
struct EpiCloud {
  DVec base;
  std::size_t n_p = 0;
  std::vector<DVec> samples;
  double delta = 0;
  std::size_t grid = 0;
  std::uint64_t seed = 0;
  /// Grid parameters skipped because the frontier was empty or infeasible.
  std::size_t skipped = 0;
};

/// Points further than δ from the base are pulled back along the segment
/// to the base, which stays in the graph when it is convex.
EpiCloud epi_cloud(const ParametricProblem& problem, const Vec& pbar, const Vec& ybar,
                   const EpiOptions& options = {});

/// ⟨v*, u − ω̄⟩ ≤ ε‖u − ω̄‖ for every sample u ≠ ω̄. The product norm
/// ‖p‖ + ‖y‖ replaces the Euclidean norm when requested.
bool frechet_normal_test(const EpiCloud& cloud, const DVec& vstar, double eps = 1e-3,
                         bool product_norm = false);

/// Largest quotient ⟨v*, u − ω̄⟩ / ‖u − ω̄‖ over the cloud (0 for a lone base).
double frechet_quotient(const EpiCloud& cloud, const DVec& vstar, bool product_norm = false);

/// Central differences of f at (p, x); rows are outputs, columns (p, x).
DMatrix finite_diff_gradient(const ParametricProblem& problem, const DVec& p, const DVec& x,
                             double h = 1e-5);

/// Literal pairwise test: i is minimal iff no j has a_i − a_j ∈ K \ {0}.
/// Duplicates keep their first occurrence.
std::vector<std::size_t> brute_force_min(const PointCloud& cloud, const PolyCone& k);

}  // namespace coderiv
