#include "coderiv/calculus.hpp"

#include <numeric>

#include "coderiv/error.hpp"
#include "coderiv/lp.hpp"

namespace coderiv {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

// Rows of `poly` placed at columns `cols` of an n-dimensional space.
void embed(HPolyhedron& into, const HPolyhedron& poly, const std::vector<std::size_t>& cols) {
  const std::size_t n = into.dim();
  for (std::size_t i = 0; i < poly.ineq_matrix().rows(); ++i) {
    Vec row = zeros(n);
    for (std::size_t k = 0; k < cols.size(); ++k) row[cols[k]] += poly.ineq_matrix()[i][k];
    into.add_inequality(std::move(row), poly.ineq_rhs()[i]);
  }
  for (std::size_t i = 0; i < poly.eq_matrix().rows(); ++i) {
    Vec row = zeros(n);
    for (std::size_t k = 0; k < cols.size(); ++k) row[cols[k]] += poly.eq_matrix()[i][k];
    into.add_equality(std::move(row), poly.eq_rhs()[i]);
  }
}

std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void check_on_graph(const PolyMap& h, const Vec& x, const Vec& y) {
  if (x.size() != h.n_in || y.size() != h.n_out)
    throw Error(ErrorCode::DimensionMismatch, "base point dimensions");
  if (!h.graph.contains(concat(x, y)))
    throw Error(ErrorCode::BasePointNotOnGraph, "(" + format_vec(x) + ", " + format_vec(y) + ")");
}

}  // namespace

std::optional<Vec> lex_min_point(const HPolyhedron& poly) {
  HPolyhedron cur = poly;
  const std::size_t n = poly.dim();
  if (cur.is_empty()) return std::nullopt;
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    lp::Result r = lp::minimize(unit(n, i), cur.ineq_matrix(), cur.ineq_rhs(), cur.eq_matrix(), cur.eq_rhs());
    Scalar v = r.status == lp::Status::Optimal ? r.value : r.x[i];
    out[i] = v;
    cur.add_equality(unit(n, i), v);
  }
  return out;
}

PolyMap affine_map(const Matrix& a, const Vec& b) {
  const std::size_t n = a.cols(), m = a.rows();
  PolyMap h{n, m, HPolyhedron(n + m)};
  for (std::size_t i = 0; i < m; ++i) {
    Vec row = concat(neg(a[i]), unit(m, i));
    h.graph.add_equality(std::move(row), b[i]);
  }
  return h;
}

PolyMap identity_map(std::size_t n) { return affine_map(Matrix::identity(n), zeros(n)); }

PolyMap cone_map(std::size_t n_in, const PolyCone& k) {
  PolyMap h{n_in, k.dim(), HPolyhedron(n_in + k.dim())};
  embed(h.graph, k.halfspaces(), range(n_in, k.dim()));
  return h;
}

PolyMap zero_map(std::size_t n_in, std::size_t n_out) { return affine_map(Matrix(n_out, n_in), zeros(n_out)); }

PolyMap constraint_map(const ParametricProblem& pr) {
  return {pr.dims.p, pr.dims.x, graph_polyhedron(pr)};
}

PolyMap pairing_map(const ParametricProblem& pr) {
  return pair_of(identity_map(pr.dims.p), constraint_map(pr));
}

PolyMap objective_profile_map(const ParametricProblem& pr, const OrderCone& k) {
  const auto& obj = std::get<AffineObjective>(pr.objective);
  PolyMap f = affine_map(obj.fp.hconcat(obj.fx), obj.c);
  return sum_of(f, cone_map(pr.dims.p + pr.dims.x, k.cone()));
}

PolyMap pair_of(const PolyMap& h1, const PolyMap& h2) {
  if (h1.n_in != h2.n_in) throw Error(ErrorCode::DimensionMismatch, "paired maps need one domain");
  const std::size_t n = h1.n_in, m1 = h1.n_out, m2 = h2.n_out;
  PolyMap h{n, m1 + m2, HPolyhedron(n + m1 + m2)};
  embed(h.graph, h1.graph, join(range(0, n), range(n, m1)));
  embed(h.graph, h2.graph, join(range(0, n), range(n + m1, m2)));
  return h;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (inner.n_out != outer.n_in) throw Error(ErrorCode::DimensionMismatch, "composition dimensions");
  const std::size_t n = inner.n_in, m = inner.n_out, k = outer.n_out;
  // variables (x, z, y)
  HPolyhedron lifted(n + k + m);
  embed(lifted, inner.graph, join(range(0, n), range(n + k, m)));
  embed(lifted, outer.graph, join(range(n + k, m), range(n, k)));
  return {n, k, project(lifted, range(0, n + k), true)};
}

PolyMap sum_of(const PolyMap& h, const PolyMap& l) {
  if (h.n_in != l.n_in || h.n_out != l.n_out) throw Error(ErrorCode::DimensionMismatch, "sum dimensions");
  const std::size_t n = h.n_in, m = h.n_out;
  // variables (x, y, y1); y2 = y − y1
  HPolyhedron lifted(n + 2 * m);
  embed(lifted, h.graph, join(range(0, n), range(n + m, m)));
  const HPolyhedron& g = l.graph;
  for (std::size_t i = 0; i < g.ineq_matrix().rows(); ++i) {
    Vec row = zeros(n + 2 * m);
    for (std::size_t c = 0; c < n; ++c) row[c] = g.ineq_matrix()[i][c];
    for (std::size_t c = 0; c < m; ++c) {
      row[n + c] += g.ineq_matrix()[i][n + c];
      row[n + m + c] -= g.ineq_matrix()[i][n + c];
    }
    lifted.add_inequality(std::move(row), g.ineq_rhs()[i]);
  }
  for (std::size_t i = 0; i < g.eq_matrix().rows(); ++i) {
    Vec row = zeros(n + 2 * m);
    for (std::size_t c = 0; c < n; ++c) row[c] = g.eq_matrix()[i][c];
    for (std::size_t c = 0; c < m; ++c) {
      row[n + c] += g.eq_matrix()[i][n + c];
      row[n + m + c] -= g.eq_matrix()[i][n + c];
    }
    lifted.add_equality(std::move(row), g.eq_rhs()[i]);
  }
  return {n, m, project(lifted, range(0, n + m), true)};
}

HPolyhedron domain(const PolyMap& h) { return project(h.graph, range(0, h.n_in), true); }

PolyMap domain_map(const PolyMap& h) { return {h.n_in, 0, domain(h)}; }

HPolyhedron map_coderivative(const PolyMap& h, const Vec& x, const Vec& y, const Vec& ystar) {
  check_on_graph(h, x, y);
  if (ystar.size() != h.n_out) throw Error(ErrorCode::DimensionMismatch, "dual vector dimension");
  PolyCone n = normal_cone(h.graph, concat(x, y));
  return n.halfspaces().substitute(range(h.n_in, h.n_out), neg(ystar));
}

HPolyhedron pair_coderivative(const PolyMap& h1, const PolyMap& h2, const Vec& x, const Vec& y1,
                              const Vec& y2, const Vec& y1star, const Vec& y2star) {
  return minkowski_sum(map_coderivative(h1, x, y1, y1star), map_coderivative(h2, x, y2, y2star));
}

Vec intermediate_point(const PolyMap& outer, const PolyMap& inner, const Vec& x, const Vec& z) {
  HPolyhedron fiber = inner.graph.substitute(range(0, inner.n_in), x);
  HPolyhedron back = outer.graph.substitute(range(outer.n_in, outer.n_out), z);
  auto y = lex_min_point(fiber.intersect(back));
  if (!y) throw Error(ErrorCode::NoIntermediatePoint, "H(x̄) ∩ L⁻¹(z̄) is empty");
  return *y;
}

HPolyhedron chain_coderivative(const PolyMap& outer, const PolyMap& inner, const Vec& x, const Vec& z,
                               const Vec& zstar, std::optional<Vec> ybar) {
  Vec y = ybar ? *ybar : intermediate_point(outer, inner, x, z);
  check_on_graph(inner, x, y);
  check_on_graph(outer, y, z);
  const std::size_t n = inner.n_in, m = inner.n_out;
  // variables (x*, y*): (y*, −z*) ∈ N_L and (x*, −y*) ∈ N_H
  PolyCone nh = normal_cone(inner.graph, concat(x, y));
  PolyCone nl = normal_cone(outer.graph, concat(y, z));
  HPolyhedron dl = nl.halfspaces().substitute(range(m, outer.n_out), neg(zstar));  // in y*
  HPolyhedron lifted(n + m);
  embed(lifted, dl, range(n, m));
  const HPolyhedron& hh = nh.halfspaces();
  for (std::size_t i = 0; i < hh.ineq_matrix().rows(); ++i) {
    Vec row = hh.ineq_matrix()[i];
    for (std::size_t c = 0; c < m; ++c) row[n + c] = -row[n + c];
    lifted.add_inequality(std::move(row), 0);
  }
  for (std::size_t i = 0; i < hh.eq_matrix().rows(); ++i) {
    Vec row = hh.eq_matrix()[i];
    for (std::size_t c = 0; c < m; ++c) row[n + c] = -row[n + c];
    lifted.add_equality(std::move(row), 0);
  }
  return project(lifted, range(0, n), true);
}

std::pair<Vec, Vec> feasible_split(const PolyMap& h, const PolyMap& l, const Vec& x, const Vec& y) {
  const std::size_t m = h.n_out;
  HPolyhedron s1 = h.graph.substitute(range(0, h.n_in), x);  // ȳ₁ ∈ H(x̄)
  HPolyhedron s2 = l.graph.substitute(range(0, l.n_in), x);  // ȳ − ȳ₁ ∈ L(x̄)
  HPolyhedron s2_in_y1(m);
  for (std::size_t i = 0; i < s2.ineq_matrix().rows(); ++i)
    s2_in_y1.add_inequality(neg(s2.ineq_matrix()[i]), s2.ineq_rhs()[i] - dot(s2.ineq_matrix()[i], y));
  for (std::size_t i = 0; i < s2.eq_matrix().rows(); ++i)
    s2_in_y1.add_equality(neg(s2.eq_matrix()[i]), s2.eq_rhs()[i] - dot(s2.eq_matrix()[i], y));
  auto y1 = lex_min_point(s1.intersect(s2_in_y1));
  if (!y1) throw Error(ErrorCode::NoFeasibleSplit, "no ȳ₁ + ȳ₂ = ȳ with ȳᵢ in the value sets");
  return {*y1, sub(y, *y1)};
}

bool sum_subspace_condition(const PolyMap& h, const PolyMap& l) {
  return is_linear_subspace(cone_hull(minkowski_difference(domain(h), domain(l))));
}

HPolyhedron sum_coderivative(const PolyMap& h, const PolyMap& l, const Vec& x, const Vec& y, const Vec& ystar,
                             std::optional<std::pair<Vec, Vec>> split) {
  if (!sum_subspace_condition(h, l))
    throw Error(ErrorCode::SubspaceConditionFailed, "cone(dom H − dom L) is not a subspace");
  auto [y1, y2] = split ? *split : feasible_split(h, l, x, y);
  return minkowski_sum(map_coderivative(h, x, y1, ystar), map_coderivative(l, x, y2, ystar));
}

}  // namespace coderiv
