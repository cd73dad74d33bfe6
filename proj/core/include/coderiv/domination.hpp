#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coderiv/efficiency.hpp"

namespace coderiv {

struct DominationOptions {
  double radius = 0.5;
  std::size_t param_samples = 32;
  std::size_t grid = 15;
  std::uint64_t seed = 0x5EED;
  /// Image sampling box [−box, box]^n_x intersected with the bounding box of C(p).
  double box = 10;
  std::size_t weights = 21;
  /// Weak variant only: test F(p) ⊆ 𝓦(p) + K̃ instead of + K.
  bool strict_tilde = false;
  /// Cone-membership slack on the numeric path.
  double slack = 1e-6;
};

struct Violation {
  Vec p;
  Vec y;
  /// Lower bound on the distance from y to the sampled frontier + cone;
  /// infinity when the frontier is empty.
  double distance = 0;
  std::string reason;
};

struct DominationCertificate {
  Variant variant = Variant::Min;
  double radius = 0;
  std::uint64_t seed = 0;
  std::size_t n_param_samples = 0;
  std::size_t n_image_samples = 0;
  std::size_t n_infeasible = 0;
  bool holds_empirically = false;
  /// Set when the image box cut off an unbounded C(p).
  bool truncated = false;
  bool strict_tilde = false;
  std::vector<Violation> violations;
};

/// Sampling-based check of F(p) ⊆ frontier(p) + K for p near p̄.
/// Throws MissingTildeCone for the strict weak mode without K̃.
DominationCertificate check_domination(const ParametricProblem& problem, const Vec& pbar,
                                       Variant variant, const DominationOptions& options = {});

/// Exact polyhedral test of F(p) ⊆ conv(frontier sample) + K at one p
/// (affine data only): images of the vertices, rays and lines of C(p).
bool exact_domination_at(const ParametricProblem& problem, const Vec& p, Variant variant,
                         std::size_t weights = 21);

}  // namespace coderiv
