#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coderiv/double_description.hpp"
#include "coderiv/matrix.hpp"

namespace coderiv {

/// Vertex/ray/line description: conv(points) + cone(rays) + span(lines).
/// An empty points list means the empty set.
struct PolyGenerators {
  std::size_t dim = 0;
  std::vector<Vec> points;
  std::vector<Vec> rays;
  std::vector<Vec> lines;

  bool empty() const { return points.empty(); }
  bool bounded() const { return rays.empty() && lines.empty(); }
};

/// {x : A x ≤ b, E x = d}. Emptiness is a state, not an error.
class HPolyhedron {
 public:
  /// The whole space ℝⁿ.
  explicit HPolyhedron(std::size_t dim = 0);
  HPolyhedron(Matrix ineq, Vec ineq_rhs, Matrix eq, Vec eq_rhs);

  static HPolyhedron empty_set(std::size_t dim);
  static HPolyhedron point(const Vec& p);
  static HPolyhedron from_generators(const PolyGenerators& gens);

  std::size_t dim() const noexcept { return dim_; }
  const Matrix& ineq_matrix() const noexcept { return a_; }
  const Vec& ineq_rhs() const noexcept { return b_; }
  const Matrix& eq_matrix() const noexcept { return e_; }
  const Vec& eq_rhs() const noexcept { return d_; }

  void add_inequality(Vec row, Scalar rhs);
  void add_equality(Vec row, Scalar rhs);

  bool contains(std::span<const Scalar> x) const;
  bool is_empty() const;
  bool is_homogeneous() const;
  std::optional<Vec> some_point() const;

  /// Both sets in the same ambient space.
  HPolyhedron intersect(const HPolyhedron& other) const;
  /// Fix coordinate values: {y : (y with coords[i] = values[i]) ∈ P}, in the
  /// remaining coordinates (order preserved).
  HPolyhedron substitute(std::span<const std::size_t> coords, std::span<const Scalar> values) const;
  HPolyhedron translate(std::span<const Scalar> shift) const;
  /// {M x : x ∈ P}.
  HPolyhedron linear_image(const Matrix& m) const;
  /// {t x : x ∈ P} for t > 0.
  HPolyhedron scaled(const Scalar& t) const;

  PolyGenerators generators() const;
  /// Lineality-free recession cone {x : A x ≤ 0, E x = 0}.
  ConeGenerators recession_generators() const;

  /// Implicit equalities promoted, equalities in reduced echelon form,
  /// redundant rows removed, rows primitive and lexicographically sorted.
  HPolyhedron canonical() const;

  friend bool operator==(const HPolyhedron&, const HPolyhedron&) = default;

 private:
  std::size_t dim_;
  Matrix a_;
  Vec b_;
  Matrix e_;
  Vec d_;
};

/// Set equality via mutual generator containment (exact).
bool same_set(const HPolyhedron& p, const HPolyhedron& q);
/// inner ⊆ outer.
bool is_subset(const HPolyhedron& inner, const HPolyhedron& outer);

/// Fourier–Motzkin projection onto the listed coordinates (in that order).
/// Rows may be redundant unless remove_redundant is set.
HPolyhedron project(const HPolyhedron& poly, std::span<const std::size_t> keep,
                    bool remove_redundant = false);

/// Drops rows implied by the others (one LP per row).
HPolyhedron remove_redundancy(const HPolyhedron& poly);

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q);
/// p − q = {u − v : u ∈ p, v ∈ q}.
HPolyhedron minkowski_difference(const HPolyhedron& p, const HPolyhedron& q);
/// Cartesian product p × q.
HPolyhedron product(const HPolyhedron& p, const HPolyhedron& q);

bool lp_feasible(const HPolyhedron& poly);
inline bool is_member(const HPolyhedron& poly, std::span<const Scalar> x) { return poly.contains(x); }

}  // namespace coderiv
