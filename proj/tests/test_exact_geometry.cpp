#include <doctest.h>

#include <algorithm>
#include <random>

#include "coderiv/error.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;
using coderiv::testing::draw;
using coderiv::testing::random_int_vec;

namespace {

Vec v(std::initializer_list<long> xs) { return from_ints(xs); }

HPolyhedron box(std::size_t n, long lo, long hi) {
  HPolyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_inequality(unit(n, i), hi);
    p.add_inequality(neg(unit(n, i)), -lo);
  }
  return p;
}

// Independent 2D dual: candidate rays are each generator and its ± rotations.
PolyCone dual_by_rotation(const std::vector<Vec>& gens) {
  std::vector<Vec> keep;
  for (const Vec& g : gens)
    for (const Vec& c : {g, Vec{-g[1], g[0]}, Vec{g[1], -g[0]}}) {
      bool ok = true;
      for (const Vec& h : gens) ok = ok && dot(c, h) >= 0;
      if (ok) keep.push_back(c);
    }
  return PolyCone::from_generators(2, keep);
}

}  // namespace

TEST_CASE("scalars parse exactly and print canonically") {
  CHECK(parse_scalar("-7/4") == Scalar(-7, 4));
  CHECK(parse_scalar("0.125") == Scalar(1, 8));
  CHECK(parse_scalar("1e-3") == Scalar(1, 1000));
  CHECK(parse_scalar("2.5E+2") == Scalar(250));
  CHECK(format_scalar(parse_scalar("6/8")) == "3/4");
  CHECK(format_scalar(Scalar(5)) == "5");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
  CHECK(from_double(0.1) != Scalar(1, 10));
  CHECK(from_double(0.5) == Scalar(1, 2));
}

TEST_CASE("feasibility and membership") {
  HPolyhedron p(1);
  p.add_inequality(v({1}), -1);
  p.add_inequality(v({-1}), 0);
  CHECK_FALSE(lp_feasible(p));
  CHECK(p.is_empty());
  const PolyCone orth = PolyCone::nonnegative_orthant(2);
  CHECK(is_member(orth.halfspaces(), v({0, 0})));
  CHECK_FALSE(is_member(orth.halfspaces(), v({-1, 0})));
}

TEST_CASE("polar cones") {
  const PolyCone orth = PolyCone::nonnegative_orthant(2);
  CHECK(polar_cone(orth) == orth);
  CHECK(polar_cone(PolyCone::whole_space(2)).is_origin());
  const std::vector<Vec> gens{v({1, 0}), v({1, 1})};
  const PolyCone k = PolyCone::from_generators(2, gens);
  const PolyCone expect = PolyCone::from_generators(2, {v({0, 1}), v({1, -1})});
  CHECK(dual_by_rotation(gens) == expect);
  CHECK(polar_cone(k) == expect);
  CHECK(negative_polar_cone(k) == expect.negated());
}

TEST_CASE("polar cone matches the rotation construction on random 2D cones") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const PolyCone k = testing::random_pointed_cone(rng, 2);
    CHECK(polar_cone(k) == dual_by_rotation(k.rays()));
  }
}

TEST_CASE("polar involution on random pointed cones") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const PolyCone k = testing::random_pointed_cone(rng, i % 2 ? 3 : 2);
    CHECK(polar_cone(polar_cone(k)) == k);
  }
}

TEST_CASE("tangent and normal cones") {
  const PolyCone orth = PolyCone::nonnegative_orthant(2);
  CHECK(tangent_cone(orth.halfspaces(), v({1, 1})).is_whole_space());
  CHECK(tangent_cone(orth.halfspaces(), v({0, 0})) == orth);
  CHECK(normal_cone(orth.halfspaces(), v({0, 0})) == orth.negated());
  CHECK_THROWS_AS(tangent_cone(orth.halfspaces(), v({-1, 0})), Error);
  CHECK_THROWS_AS(normal_cone(orth.halfspaces(), v({-1, 0})), Error);

  const ParametricProblem ex41 = builtin_example("example_4_1");
  const HPolyhedron g41 = graph_polyhedron(ex41);
  CHECK(normal_cone(g41, zeros(4)) == PolyCone::from_generators(4, {v({1, 2, 1, -1})}));
  const PolyCone t41 = tangent_cone(g41, zeros(4));
  CHECK(t41.contains(v({1, 0, 0, 1})));
  CHECK_FALSE(t41.contains(v({1, 0, 0, 0})));

  const ParametricProblem ex51 = builtin_example("example_5_1");
  CHECK(normal_cone(graph_polyhedron(ex51), zeros(3)) ==
        PolyCone::from_generators(3, {v({0, -1, 0}), v({0, 0, -1})}));
}

TEST_CASE("normal cone is the negative polar of the tangent cone at random vertices") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 25; ++i) {
    HPolyhedron p = box(3, -3, 3);
    for (int r = 0; r < 3; ++r) p.add_inequality(random_int_vec(rng, 3, -2, 2), draw(rng, 0, 3));
    for (const Vec& pt : p.generators().points)
      CHECK(normal_cone(p, pt) == negative_polar_cone(tangent_cone(p, pt)));
  }
}

TEST_CASE("projection examples") {
  const std::vector<std::size_t> first{0};
  CHECK(same_set(project(box(2, 0, 1), first), box(1, 0, 1)));
  HPolyhedron tri(2);
  tri.add_inequality(v({1, 1}), 1);
  tri.add_inequality(v({-1, 0}), 0);
  tri.add_inequality(v({0, -1}), 0);
  CHECK(same_set(project(tri, first), box(1, 0, 1)));
}

TEST_CASE("projection agrees with a grid membership oracle") {
  std::mt19937_64 rng(5);
  const std::vector<std::size_t> keep{0, 1};
  for (int i = 0; i < 4; ++i) {
    HPolyhedron p = box(3, -2, 2);
    for (int r = 0; r < 4; ++r) p.add_inequality(random_int_vec(rng, 3, -3, 3), draw(rng, -1, 3));
    const HPolyhedron proj = project(p, keep, i % 2 == 0);
    for (int a = 0; a < 50; ++a)
      for (int b = 0; b < 50; ++b) {
        const Vec pt{Scalar(a - 25, 10), Scalar(b - 25, 10)};
        const std::vector<std::size_t> fixed{0, 1};
        const bool lifts = lp_feasible(p.substitute(fixed, pt));
        REQUIRE(proj.contains(pt) == lifts);
      }
  }
}

TEST_CASE("subspaces and lineality") {
  CHECK(is_linear_subspace(PolyCone::whole_space(2)));
  const PolyCone orth = PolyCone::nonnegative_orthant(2);
  CHECK_FALSE(is_linear_subspace(orth));
  CHECK(lineality(orth).is_origin());
  const PolyCone axis = PolyCone::from_generators(2, {v({1, 0}), v({-1, 0})});
  CHECK(is_linear_subspace(axis));
  CHECK(lineality(axis) == PolyCone::from_generators(2, {}, {v({1, 0})}));
}

TEST_CASE("cone hulls") {
  const PolyCone ray = PolyCone::from_generators(2, {v({1, 1})});
  CHECK(cone_hull(HPolyhedron::point(v({1, 1}))) == ray);
  CHECK(cone_hull(box(2, -1, 1)).is_whole_space());
  HPolyhedron seg(2);
  seg.add_inequality(v({-1, 0}), -1);
  seg.add_inequality(v({1, 0}), 2);
  seg.add_equality(v({1, -1}), 0);
  const PolyCone h = cone_hull(seg);
  CHECK(h == ray);
  for (int t = 0; t < 5; ++t) CHECK(h.contains(scale(Scalar(t, 2), v({3, 3}))));
  CHECK(cone_hull(HPolyhedron::empty_set(2)).is_origin());
}

TEST_CASE("canonical form is independent of row order") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::pair<Vec, Scalar>> rows;
    for (int r = 0; r < 5; ++r) rows.emplace_back(random_int_vec(rng, 3, -3, 3), Scalar(draw(rng, 1, 4)));
    HPolyhedron a(3), b(3);
    for (const auto& [row, rhs] : rows) a.add_inequality(scale(Scalar(2), row), 2 * rhs);
    std::reverse(rows.begin(), rows.end());
    for (const auto& [row, rhs] : rows) b.add_inequality(row, rhs);
    CHECK(a.canonical() == b.canonical());
  }
}

TEST_CASE("minkowski sums, differences and images") {
  const HPolyhedron sq = box(2, 0, 1);
  CHECK(same_set(minkowski_sum(sq, sq), box(2, 0, 2)));
  CHECK(same_set(minkowski_difference(sq, sq), box(2, -1, 1)));
  CHECK(same_set(sq.translate(v({1, 1})), box(2, 1, 2)));
  CHECK(same_set(sq.scaled(Scalar(3)), box(2, 0, 3)));
  const HPolyhedron img = sq.linear_image(Matrix::from_ints(2, {{1, 1}}));
  CHECK(same_set(img, box(1, 0, 2)));
  CHECK(same_set(product(box(1, 0, 1), box(1, 0, 1)), sq));
}

TEST_CASE("generators round trip") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 15; ++i) {
    HPolyhedron p(3);
    for (int r = 0; r < 5; ++r) p.add_inequality(random_int_vec(rng, 3, -3, 3), draw(rng, 0, 3));
    if (p.is_empty()) continue;
    CHECK(same_set(HPolyhedron::from_generators(p.generators()), p));
  }
}
