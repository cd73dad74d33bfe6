#pragma once

#include <span>

#include "coderiv/polyhedron.hpp"

namespace coderiv {

/// Closed convex polyhedral cone, carried in both representations.
class PolyCone {
 public:
  /// The origin {0} ⊂ ℝⁿ.
  explicit PolyCone(std::size_t dim = 0);

  static PolyCone from_halfspaces(const Matrix& ineq, const Matrix& eq);
  static PolyCone from_generators(std::size_t dim, std::vector<Vec> rays,
                                  std::vector<Vec> lines = {});
  static PolyCone from_polyhedron(const HPolyhedron& homogeneous);
  static PolyCone origin(std::size_t dim);
  static PolyCone whole_space(std::size_t dim);
  static PolyCone nonnegative_orthant(std::size_t dim);

  std::size_t dim() const noexcept { return gens_.dim; }
  /// {x : ineq x ≤ 0, eq x = 0}, canonical.
  const HPolyhedron& halfspaces() const noexcept { return h_; }
  const ConeGenerators& generators() const noexcept { return gens_; }
  const std::vector<Vec>& rays() const noexcept { return gens_.rays; }
  const std::vector<Vec>& lines() const noexcept { return gens_.lines; }

  bool contains(std::span<const Scalar> x) const { return h_.contains(x); }
  bool contains(const PolyCone& other) const;
  /// x ∈ int K (strict on every inequality, no equalities present).
  bool interior_contains(std::span<const Scalar> x) const;
  bool is_pointed() const { return gens_.lines.empty(); }
  bool is_solid() const { return h_.eq_matrix().rows() == 0; }
  bool is_origin() const { return gens_.is_origin(); }
  bool is_whole_space() const { return gens_.lines.size() == dim(); }

  PolyCone negated() const;

  friend bool operator==(const PolyCone& a, const PolyCone& b);

 private:
  PolyCone(ConeGenerators gens, HPolyhedron h) : gens_(std::move(gens)), h_(std::move(h)) {}

  ConeGenerators gens_;
  HPolyhedron h_;
};

/// K* = {y : ⟨y,k⟩ ≥ 0 ∀k ∈ K}.
PolyCone polar_cone(const PolyCone& cone);
/// K⁻ = {y : ⟨y,k⟩ ≤ 0 ∀k ∈ K}.
PolyCone negative_polar_cone(const PolyCone& cone);

/// T(x̄, P) = {v : A_active v ≤ 0, E v = 0}. Throws PointNotInSet.
PolyCone tangent_cone(const HPolyhedron& poly, std::span<const Scalar> point);
/// N(x̄, P) = cone(active rows) + span(equality rows). Throws PointNotInSet.
PolyCone normal_cone(const HPolyhedron& poly, std::span<const Scalar> point);

/// Closure of ℝ₊·P via homogenization and projection. The empty set maps to {0}.
PolyCone cone_hull(const HPolyhedron& poly);

bool is_linear_subspace(const PolyCone& cone);
/// K ∩ −K.
PolyCone lineality(const PolyCone& cone);

/// Pointed ordering cone with its dual.
class OrderCone {
 public:
  OrderCone() : OrderCone(PolyCone::origin(0)) {}
  /// Throws ConeNotPointed.
  explicit OrderCone(PolyCone cone);

  static OrderCone orthant(std::size_t dim) { return OrderCone(PolyCone::nonnegative_orthant(dim)); }

  std::size_t dim() const noexcept { return cone_.dim(); }
  const PolyCone& cone() const noexcept { return cone_; }
  const PolyCone& dual() const noexcept { return dual_; }
  bool is_solid() const noexcept { return solid_; }
  /// int K* ≠ ∅; always true for a pointed cone.
  bool dual_is_solid() const noexcept { return dual_.is_solid(); }
  const std::vector<Vec>& extreme_rays() const noexcept { return cone_.rays(); }
  const std::vector<Vec>& dual_extreme_rays() const noexcept { return dual_.rays(); }

  bool contains(std::span<const Scalar> y) const { return cone_.contains(y); }
  bool interior_contains(std::span<const Scalar> y) const { return cone_.interior_contains(y); }
  bool dual_contains(std::span<const Scalar> w) const { return dual_.contains(w); }
  /// ⟨w,k⟩ > 0 for every k ∈ K∖{0}.
  bool dual_interior_contains(std::span<const Scalar> w) const;
  /// A fixed element of int K*: the sum of the extreme rays of K*.
  Vec dual_interior_point() const;

  friend bool operator==(const OrderCone& a, const OrderCone& b) { return a.cone_ == b.cone_; }

 private:
  PolyCone cone_;
  PolyCone dual_;
  bool solid_ = false;
};

}  // namespace coderiv
