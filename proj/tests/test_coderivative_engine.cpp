#include <doctest.h>

#include <cmath>
#include <random>

#include "coderiv/error.hpp"
#include "coderiv/oracle.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;

namespace {

Vec v(std::initializer_list<long> xs) { return from_ints(xs); }

BasePoint base_of(const ParametricProblem& pr) { return check_solution_point(pr, *pr.base_p, *pr.base_x); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::SchemaError;
}

HPolyhedron point(const Vec& x) { return HPolyhedron::point(x); }

}  // namespace

TEST_CASE("scalar subdifferential") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b41 = base_of(ex41);
  for (const Vec& y : {v({1, 0}), v({2, 3}), v({-1, 4})}) {
    const SubgradientPair s = scalar_subdifferential(ex41, b41, y);
    CHECK(s.pstar == zeros(3));
    CHECK(s.xstar == Vec{y[0] + 2 * y[1]});
  }
  const ParametricProblem ex51 = builtin_example("example_5_1");
  const SubgradientPair s51 = scalar_subdifferential(ex51, base_of(ex51), v({3, 7}));
  CHECK(s51.pstar == zeros(1));
  CHECK(s51.xstar == v({3, 7}));
  const SubgradientPair zero = scalar_subdifferential(ex41, b41, zeros(2));
  CHECK(is_zero(zero.pstar));
  CHECK(is_zero(zero.xstar));
}

TEST_CASE("constraint coderivative") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b41 = base_of(ex41);
  CHECK(same_set(coderivative_constraint(ex41, b41, v({2})), point(v({2, 4, 2}))));
  CHECK(coderivative_constraint(ex41, b41, v({-1})).is_empty());
  const ParametricProblem ex51 = builtin_example("example_5_1");
  const BasePoint b51 = base_of(ex51);
  CHECK(same_set(coderivative_constraint(ex51, b51, v({1, 1})), point(zeros(1))));
  CHECK(coderivative_constraint(ex51, b51, v({-1, 0})).is_empty());
  const ParametricProblem smooth = builtin_example("smooth_disk");
  CHECK(code_of([&] { coderivative_constraint(smooth, base_of(smooth), v({1, 0})); }) ==
        ErrorCode::UnsupportedConstraintKind);
}

TEST_CASE("profile coderivative on the shipped examples") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b41 = base_of(ex41);
  const CoderivSet one = profile_coderivative_F(ex41, b41, v({1, 1}));
  CHECK(one.exact);
  CHECK(same_set(one.set, point(v({3, 6, 3}))));
  CHECK(profile_coderivative_F(ex41, b41, v({-1, 0})).empty());
  const ParametricProblem ex51 = builtin_example("example_5_1");
  CHECK(same_set(profile_coderivative_F(ex51, base_of(ex51), v({2, 5})).set, point(zeros(1))));
}

TEST_CASE("qualification conditions") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const QualReport q41 = qualification_check(ex41, base_of(ex41));
  CHECK(q41.holds());
  CHECK(q41.condition_i.cone.is_whole_space());
  CHECK(q41.condition_i.cone.dim() == 4);
  CHECK(q41.condition_ii.cone.is_whole_space());
  CHECK(q41.condition_ii.cone.dim() == 3);
  const ParametricProblem ex51 = builtin_example("example_5_1");
  const QualReport q51 = qualification_check(ex51, base_of(ex51));
  CHECK(q51.holds());
  CHECK(q51.condition_i.cone.dim() == 3);
  CHECK(q51.condition_i.cone.is_whole_space());
  CHECK(q51.condition_ii.cone.is_whole_space());
}

TEST_CASE("frontier coderivative variants") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b41 = base_of(ex41);
  for (const Vec& y : {v({1, 0}), v({0, 1}), v({2, 3})}) {
    const Scalar a = y[0] + 2 * y[1];
    const CoderivSet s = frontier_coderivative(ex41, b41, y, Variant::Min);
    CHECK(same_set(s.set, point({a, 2 * a, a})));
    CHECK(s.provenance.find("certified") != std::string::npos);
    CHECK(same_set(frontier_coderivative(ex41, b41, y, Variant::Proper).set, s.set));
  }
  const ParametricProblem ex51 = builtin_example("example_5_1");
  CHECK(same_set(frontier_coderivative(ex51, base_of(ex51), v({1, 2}), Variant::Min).set, point(zeros(1))));
  CHECK(code_of([&] { frontier_coderivative(ex51, base_of(ex51), v({1, 2}), Variant::Weak); }) ==
        ErrorCode::MissingTildeCone);
}

TEST_CASE("weak variant on the tilde cone, checked by the oracle on its boundary") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b41 = base_of(ex41);
  ParametricProblem tilde = ex41;
  tilde.cone = *ex41.cone_tilde;
  tilde.cone_tilde.reset();
  for (const Vec& y : {v({-1, 2}), v({-2, 4}), v({-3, 6}), v({2, -1}), v({4, -2})}) {
    REQUIRE(ex41.cone_tilde->dual_contains(y));
    const CoderivSet s = frontier_coderivative(ex41, b41, y, Variant::Weak);
    const Scalar a = y[0] + 2 * y[1];
    CHECK(same_set(s.set, point({a, 2 * a, a})));
    EpiOptions eo;
    const EpiCloud cloud = epi_cloud(tilde, b41.p, b41.y, eo);
    DVec cand = to_doubles(Vec{a, 2 * a, a});
    for (const auto& c : neg(y)) cand.push_back(c.get_d());
    CHECK(frechet_normal_test(cloud, cand, 1e-3));
  }
}

TEST_CASE("domination failure is an error, not an empty set") {
  const ParametricProblem ray = builtin_example("ray_counterexample");
  const BasePoint base{v({0}), v({0}), v({0, 0}), false};
  // efficiency is checked before domination
  CHECK(code_of([&] { frontier_coderivative(ray, base, v({1, 1}), Variant::Min); }) == ErrorCode::NotEfficient);

  const ParametricProblem smooth = builtin_example("smooth_disk");
  const BasePoint sb = base_of(smooth);
  FrontierOptions fo;
  fo.domination.param_samples = 4;
  fo.domination.slack = -0.5;  // images pushed below the frontier
  CHECK(code_of([&] { frontier_coderivative(smooth, sb, v({1, 1}), Variant::Min, fo); }) ==
        ErrorCode::DominationNotCertified);
  fo.assume_domination = true;
  const FrontierResult r = frontier_coderivative_detailed(smooth, sb, v({1, 1}), Variant::Min, fo);
  CHECK_FALSE(r.domination.has_value());
  CHECK(r.value.provenance.find("assumed") != std::string::npos);
}

TEST_CASE("base must be efficient") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  CHECK(code_of([&] { check_solution_point(ex41, zeros(3), v({2})); }) == ErrorCode::NotEfficient);
}

TEST_CASE("dual-cone gating and positive homogeneity") {
  std::mt19937_64 rng(51);
  for (const auto& inst : testing::random_instances(52, 6)) {
    const auto& pr = inst.problem;
    for (int i = 0; i < 5; ++i) {
      Vec y = testing::random_int_vec(rng, 2, -3, 3);
      if (pr.cone.dual_contains(y)) {
        const CoderivSet s = profile_coderivative_F(pr, inst.base, y);
        for (const Scalar& t : {Scalar(1, 2), Scalar(3)})
          CHECK(same_set(profile_coderivative_F(pr, inst.base, scale(t, y)).set, s.set.scaled(t)));
      } else {
        CHECK(profile_coderivative_F(pr, inst.base, y).empty());
      }
    }
  }
}

TEST_CASE("frontier coderivative equals the profile formula when domination is certified") {
  for (const auto& inst : testing::random_instances(53, 6)) {
    for (const Vec& y : {v({1, 1}), v({1, 2})}) {
      const FrontierResult r = frontier_coderivative_detailed(inst.problem, inst.base, y, Variant::Min);
      REQUIRE(r.domination);
      CHECK(r.domination->holds_empirically);
      CHECK(same_coderivative(r.value, profile_coderivative_F(inst.problem, inst.base, y)));
    }
  }
}

TEST_CASE("smooth objective and constraint through the multiplier route") {
  const ParametricProblem pr = builtin_example("smooth_disk");
  const BasePoint base = base_of(pr);
  const CoderivSet s = profile_coderivative_F(pr, base, v({1, 1}));
  CHECK_FALSE(s.exact);
  CHECK(s.tolerance > 0);
  const PolyGenerators g = s.generators();
  REQUIRE(g.points.size() == 1);
  CHECK(g.bounded());
  // −e⁻¹ from ∇_p f, and −e⁻¹/2 from the active disk constraint
  CHECK(std::abs(g.points[0][0].get_d() + 1.5 * std::exp(-1.0)) < 1e-8);
}
