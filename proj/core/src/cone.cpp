#include "coderiv/cone.hpp"

#include <numeric>

#include "coderiv/error.hpp"

namespace coderiv {

namespace {

HPolyhedron homogeneous(std::size_t dim, const ConeHalfspaces& hs) {
  Matrix a = hs.ineq.rows() ? hs.ineq : Matrix(dim);
  Matrix e = hs.eq.rows() ? hs.eq : Matrix(dim);
  Vec b = zeros(a.rows()), d = zeros(e.rows());
  return HPolyhedron(std::move(a), std::move(b), std::move(e), std::move(d));
}

}  // namespace

PolyCone::PolyCone(std::size_t dim) : h_(dim) {
  gens_.dim = dim;
  h_ = homogeneous(dim, cone_halfspaces(gens_));
}

PolyCone PolyCone::from_halfspaces(const Matrix& ineq, const Matrix& eq) {
  const std::size_t dim = std::max(ineq.cols(), eq.cols());
  Matrix a = ineq.rows() ? ineq : Matrix(dim);
  Matrix e = eq.rows() ? eq : Matrix(dim);
  ConeGenerators g = cone_generators(a, e);
  HPolyhedron h = homogeneous(dim, cone_halfspaces(g));
  return PolyCone(std::move(g), std::move(h));
}

PolyCone PolyCone::from_generators(std::size_t dim, std::vector<Vec> rays, std::vector<Vec> lines) {
  ConeGenerators raw = canonical_generators(dim, std::move(rays), std::move(lines));
  ConeHalfspaces hs = cone_halfspaces(raw);
  // Round trip drops non-extreme rays.
  ConeGenerators g = cone_generators(hs.ineq.rows() ? hs.ineq : Matrix(dim),
                                     hs.eq.rows() ? hs.eq : Matrix(dim));
  return PolyCone(std::move(g), homogeneous(dim, hs));
}

PolyCone PolyCone::from_polyhedron(const HPolyhedron& poly) {
  if (!poly.is_homogeneous()) throw Error(ErrorCode::DimensionMismatch, "polyhedron is not a cone");
  return from_halfspaces(poly.ineq_matrix(), poly.eq_matrix());
}

PolyCone PolyCone::origin(std::size_t dim) { return PolyCone(dim); }

PolyCone PolyCone::whole_space(std::size_t dim) {
  std::vector<Vec> lines;
  for (std::size_t i = 0; i < dim; ++i) lines.push_back(unit(dim, i));
  return from_generators(dim, {}, std::move(lines));
}

PolyCone PolyCone::nonnegative_orthant(std::size_t dim) {
  std::vector<Vec> rays;
  for (std::size_t i = 0; i < dim; ++i) rays.push_back(unit(dim, i));
  return from_generators(dim, std::move(rays));
}

bool PolyCone::contains(const PolyCone& other) const {
  if (other.dim() != dim()) return false;
  for (const auto& r : other.rays())
    if (!contains(r)) return false;
  for (const auto& l : other.lines())
    if (!contains(l) || !contains(neg(l))) return false;
  return true;
}

bool PolyCone::interior_contains(std::span<const Scalar> x) const {
  if (!is_solid()) return false;
  const Matrix& a = h_.ineq_matrix();
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (sgn(dot(a[i], x)) >= 0) return false;
  return true;
}

PolyCone PolyCone::negated() const {
  std::vector<Vec> rays;
  for (const auto& r : gens_.rays) rays.push_back(neg(r));
  return from_generators(dim(), std::move(rays), gens_.lines);
}

bool operator==(const PolyCone& a, const PolyCone& b) {
  return a.dim() == b.dim() && a.contains(b) && b.contains(a);
}

PolyCone polar_cone(const PolyCone& cone) {
  Matrix a(cone.dim()), e(cone.dim());
  for (const auto& r : cone.rays()) a.push_row(neg(r));
  for (const auto& l : cone.lines()) e.push_row(l);
  return PolyCone::from_halfspaces(a, e);
}

PolyCone negative_polar_cone(const PolyCone& cone) {
  Matrix a(cone.dim()), e(cone.dim());
  for (const auto& r : cone.rays()) a.push_row(r);
  for (const auto& l : cone.lines()) e.push_row(l);
  return PolyCone::from_halfspaces(a, e);
}

namespace {

std::vector<std::size_t> active_rows(const HPolyhedron& poly, std::span<const Scalar> point) {
  if (point.size() != poly.dim())
    throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (!poly.contains(point)) throw Error(ErrorCode::PointNotInSet, format_vec(point));
  std::vector<std::size_t> active;
  const Matrix& a = poly.ineq_matrix();
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (dot(a[i], point) == poly.ineq_rhs()[i]) active.push_back(i);
  return active;
}

}  // namespace

PolyCone tangent_cone(const HPolyhedron& poly, std::span<const Scalar> point) {
  auto active = active_rows(poly, point);
  Matrix a(poly.dim());
  for (auto i : active) a.push_row(poly.ineq_matrix()[i]);
  return PolyCone::from_halfspaces(a, poly.eq_matrix());
}

PolyCone normal_cone(const HPolyhedron& poly, std::span<const Scalar> point) {
  auto active = active_rows(poly, point);
  std::vector<Vec> rays;
  for (auto i : active) rays.push_back(poly.ineq_matrix()[i]);
  return PolyCone::from_generators(poly.dim(), std::move(rays), poly.eq_matrix().row_list());
}

PolyCone cone_hull(const HPolyhedron& poly) {
  const std::size_t n = poly.dim();
  if (poly.is_empty()) return PolyCone::origin(n);
  // {(x,t) : A x − b t ≤ 0, E x − d t = 0, t ≥ 0}, then forget t.
  HPolyhedron lifted(n + 1);
  for (std::size_t i = 0; i < poly.ineq_matrix().rows(); ++i) {
    Vec row = poly.ineq_matrix()[i];
    row.push_back(-poly.ineq_rhs()[i]);
    lifted.add_inequality(std::move(row), 0);
  }
  Vec t_row = zeros(n + 1);
  t_row[n] = -1;
  lifted.add_inequality(std::move(t_row), 0);
  for (std::size_t i = 0; i < poly.eq_matrix().rows(); ++i) {
    Vec row = poly.eq_matrix()[i];
    row.push_back(-poly.eq_rhs()[i]);
    lifted.add_equality(std::move(row), 0);
  }
  std::vector<std::size_t> keep(n);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  return PolyCone::from_polyhedron(project(lifted, keep));
}

bool is_linear_subspace(const PolyCone& cone) { return cone.contains(cone.negated()); }

PolyCone lineality(const PolyCone& cone) {
  return PolyCone::from_generators(cone.dim(), {}, cone.lines());
}

OrderCone::OrderCone(PolyCone cone) : cone_(std::move(cone)), dual_(polar_cone(cone_)) {
  if (!cone_.is_pointed()) throw Error(ErrorCode::ConeNotPointed, "ordering cone contains a line");
  solid_ = cone_.is_solid();
}

bool OrderCone::dual_interior_contains(std::span<const Scalar> w) const {
  for (const auto& r : cone_.rays())
    if (sgn(dot(w, r)) <= 0) return false;
  return true;
}

Vec OrderCone::dual_interior_point() const {
  Vec w = zeros(dim());
  for (const auto& r : dual_.rays()) w = add(w, r);
  return w;
}

}  // namespace coderiv
