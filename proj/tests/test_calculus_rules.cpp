#include <doctest.h>

#include <random>

#include "coderiv/calculus.hpp"
#include "coderiv/error.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;

namespace {

Vec v(std::initializer_list<long> xs) { return from_ints(xs); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::SchemaError;
}

}  // namespace

TEST_CASE("direct coderivative of an affine map is the adjoint") {
  const Matrix a = Matrix::from_ints(2, {{1, 2}, {0, -1}, {3, 1}});
  const PolyMap h = affine_map(a, v({1, 0, 2}));
  const Vec ys = v({1, -2, 1});
  CHECK(same_set(map_coderivative(h, v({0, 0}), v({1, 0, 2}), ys), HPolyhedron::point(a.transpose_times(ys))));
  CHECK(code_of([&] { map_coderivative(h, v({0, 0}), v({0, 0, 0}), ys); }) == ErrorCode::BasePointNotOnGraph);
}

TEST_CASE("pair rule") {
  const PolyMap id1 = identity_map(1);
  const HPolyhedron one = pair_coderivative(id1, id1, v({0}), v({0}), v({0}), v({2}), v({5}));
  CHECK(same_set(one, HPolyhedron::point(v({7}))));

  const ParametricProblem ex41 = builtin_example("example_4_1");
  const PolyMap id = identity_map(3), c = constraint_map(ex41);
  const Vec ps = v({1, -1, 2});
  for (long xs : {0L, 2L, -1L}) {
    const HPolyhedron got = pair_coderivative(id, c, zeros(3), zeros(3), zeros(1), ps, v({xs}));
    if (xs < 0) {
      CHECK(got.is_empty());
    } else {
      CHECK(same_set(got, HPolyhedron::point(add(ps, v({xs, 2 * xs, xs})))));
    }
    CHECK(same_set(got, map_coderivative(pair_of(id, c), zeros(3), zeros(4), concat(ps, v({xs})))));
  }
}

TEST_CASE("chain rule") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const PolyMap h = pairing_map(ex41);
  const PolyMap outer = objective_profile_map(ex41, ex41.cone);
  CHECK(same_set(chain_coderivative(outer, h, zeros(3), zeros(2), v({1, 1})), HPolyhedron::point(v({3, 6, 3}))));
  CHECK(chain_coderivative(outer, h, zeros(3), zeros(2), v({-1, 1})).is_empty());
  // identity outside collapses to the inner coderivative
  const PolyMap c = constraint_map(ex41);
  CHECK(same_set(chain_coderivative(identity_map(1), c, zeros(3), zeros(1), v({2})),
                 map_coderivative(c, zeros(3), zeros(1), v({2}))));
  CHECK(intermediate_point(outer, h, zeros(3), zeros(2)) == zeros(4));
  CHECK(code_of([&] { intermediate_point(identity_map(1), identity_map(1), v({0}), v({1})); }) ==
        ErrorCode::NoIntermediatePoint);
}

TEST_CASE("sum rule") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const auto& obj = std::get<AffineObjective>(ex41.objective);
  const PolyMap f = affine_map(obj.fp.hconcat(obj.fx), obj.c);
  const PolyMap k = cone_map(4, ex41.cone.cone());
  for (const Vec& ys : {v({1, 1}), v({0, 2}), v({-1, 0})}) {
    const HPolyhedron rule = sum_coderivative(f, k, zeros(4), zeros(2), ys);
    CHECK(same_set(rule, map_coderivative(sum_of(f, k), zeros(4), zeros(2), ys)));
  }
  const PolyMap zero = zero_map(4, 2);
  CHECK(same_set(sum_coderivative(f, zero, zeros(4), zeros(2), v({1, 3})),
                 map_coderivative(f, zeros(4), zeros(2), v({1, 3}))));
  const Matrix a = Matrix::from_ints(2, {{1, 0}, {2, 1}}), b = Matrix::from_ints(2, {{0, 1}, {1, 1}});
  const Vec ys = v({1, -1});
  CHECK(same_set(sum_coderivative(affine_map(a, zeros(2)), affine_map(b, zeros(2)), zeros(2), zeros(2), ys),
                 HPolyhedron::point(add(a.transpose_times(ys), b.transpose_times(ys)))));
}

TEST_CASE("sum rule errors") {
  // dom H = [0, ∞), dom L = {0}: the cone of the difference is a ray
  PolyMap h{1, 1, HPolyhedron(2)};
  h.graph.add_inequality(v({-1, 0}), 0);
  h.graph.add_equality(v({0, 1}), 0);
  PolyMap l{1, 1, HPolyhedron(2)};
  l.graph.add_equality(v({1, 0}), 0);
  l.graph.add_equality(v({0, 1}), 0);
  CHECK_FALSE(sum_subspace_condition(h, l));
  CHECK(code_of([&] { sum_coderivative(h, l, v({0}), v({0}), v({1})); }) == ErrorCode::SubspaceConditionFailed);
  const PolyMap z = zero_map(1, 1);
  CHECK(code_of([&] { feasible_split(z, z, v({0}), v({1})); }) == ErrorCode::NoFeasibleSplit);
}

TEST_CASE("rules agree with direct normal cones on random instances") {
  std::mt19937_64 rng(61);
  for (const auto& inst : testing::random_instances(62, 8)) {
    const auto& pr = inst.problem;
    const auto& b = inst.base;
    const PolyMap h = pairing_map(pr);
    const PolyMap outer = objective_profile_map(pr, pr.cone);
    const PolyMap composed = compose(outer, h);
    for (int i = 0; i < 3; ++i) {
      const Vec ys = testing::random_int_vec(rng, 2, -2, 3);
      CHECK(same_set(chain_coderivative(outer, h, b.p, b.y, ys), map_coderivative(composed, b.p, b.y, ys)));
      CHECK(same_set(chain_coderivative(outer, h, b.p, b.y, ys), profile_coderivative_F(pr, b, ys).set));
    }
  }
}

TEST_CASE("lexicographic minimum") {
  HPolyhedron p(2);
  p.add_inequality(v({-1, 0}), -1);
  p.add_inequality(v({-1, -1}), -3);
  CHECK(lex_min_point(p) == v({1, 2}));
  CHECK_FALSE(lex_min_point(HPolyhedron::empty_set(2)).has_value());
}
