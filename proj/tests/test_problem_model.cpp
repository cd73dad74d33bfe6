#include <doctest.h>

#include <random>

#include "coderiv/error.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;
using nlohmann::json;

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

TEST_CASE("shipped examples parse and round trip") {
  for (const auto& name : example_names()) {
    const ParametricProblem pr = builtin_example(name);
    const json doc = serialize_problem(pr);
    const ParametricProblem back = parse_problem(doc);
    CHECK(serialize_problem(back) == doc);
    CHECK(problem_digest(back) == problem_digest(pr));
    CHECK(problem_digest(pr).size() == 16);
  }
  const ParametricProblem ex41 = builtin_example("example_4_1");
  CHECK(ex41.dims == Dims{3, 1, 2});
  CHECK(ex41.cone.cone() == PolyCone::nonnegative_orthant(2));
  const ParametricProblem ex51 = load_problem("example_5_1");
  const auto& fam = std::get<SemiInfiniteSystem>(ex51.constraints).families.at(0);
  CHECK(fam.t_lo == 0);
  CHECK(fam.t_hi == 1);
}

TEST_CASE("schema errors name the field") {
  json doc = serialize_problem(builtin_example("example_4_1"));
  doc["objective"]["Fx"] = json::array({json::array({"1", "0"}), json::array({"2", "0"})});
  CHECK(code_of([&] { parse_problem(doc); }) == ErrorCode::DimensionMismatch);
  json bad = serialize_problem(builtin_example("example_4_1"));
  bad.erase("dims");
  try {
    parse_problem(bad);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    CHECK(std::string(e.what()).find("dims") != std::string::npos);
  }
  CHECK(code_of([] { parse_problem_text("{not json"); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { load_problem("/nonexistent/problem.json"); }) == ErrorCode::SchemaError);
}

TEST_CASE("rationals in documents") {
  json doc = serialize_problem(builtin_example("example_4_1"));
  doc["objective"]["c"] = json::array({"1/3", "0.25"});
  const ParametricProblem pr = parse_problem(doc);
  CHECK(std::get<AffineObjective>(pr.objective).c == Vec{Scalar(1, 3), Scalar(1, 4)});
}

TEST_CASE("validation reports") {
  CHECK(validate(builtin_example("example_4_1")).ok());
  CHECK(validate(builtin_example("example_5_1")).ok());
  // f(p,x) = (x, −x²) is not ℝ²₊-convex
  ParametricProblem pr;
  pr.name = "concave";
  pr.dims = {1, 1, 2};
  pr.cone = OrderCone::orthant(2);
  QuadraticObjective q;
  q.q = {Matrix(2, 2), Matrix::from_ints(2, {{0, 0}, {0, -2}})};
  q.l = Matrix::from_ints(2, {{0, 1}, {0, 0}});
  q.c = zeros(2);
  pr.objective = q;
  pr.constraints = AffineSystem{};
  const ValidationReport rep = validate(pr);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.convexity_witness);
  CHECK(*rep.convexity_witness == v({0, 1}));
}

TEST_CASE("psd test") {
  CHECK(is_psd(Matrix::from_ints(2, {{2, 1}, {1, 2}})));
  CHECK(is_psd(Matrix::from_ints(2, {{1, 1}, {1, 1}})));
  CHECK_FALSE(is_psd(Matrix::from_ints(2, {{1, 2}, {2, 1}})));
  CHECK_FALSE(is_psd(Matrix::from_ints(2, {{0, 1}, {1, 0}})));
}

TEST_CASE("feasible and graph polyhedra") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  HPolyhedron expect(1);
  expect.add_inequality(v({-1}), -4);
  CHECK(same_set(feasible_polyhedron(ex41, v({1, 1, 1})), expect));
  HPolyhedron g(4);
  g.add_inequality(v({1, 2, 1, -1}), 0);
  CHECK(same_set(graph_polyhedron(ex41), g));

  const ParametricProblem ex51 = builtin_example("example_5_1");
  const HPolyhedron orth = PolyCone::nonnegative_orthant(2).halfspaces();
  for (const Vec& p : {v({0}), v({5}), v({-3})}) CHECK(same_set(feasible_polyhedron(ex51, p), orth));
  HPolyhedron g51(3);
  g51.add_inequality(v({0, -1, 0}), 0);
  g51.add_inequality(v({0, 0, -1}), 0);
  CHECK(same_set(graph_polyhedron(ex51), g51));

  ParametricProblem free = ex41;
  free.constraints = AffineSystem{};
  CHECK(same_set(graph_polyhedron(free), HPolyhedron(4)));

  ParametricProblem empty = ex41;
  AffineSystem contradictory;
  contradictory.rows.push_back({v({0, 0, 0}), v({1}), Scalar(1), Relation::Le});
  contradictory.rows.push_back({v({0, 0, 0}), v({-1}), Scalar(0), Relation::Le});
  empty.constraints = contradictory;
  CHECK_FALSE(lp_feasible(feasible_polyhedron(empty, v({0, 0, 0}))));
}

TEST_CASE("feasible slice matches the graph") {
  std::mt19937_64 rng(41);
  for (const auto& inst : testing::random_instances(41, 5)) {
    const auto& pr = inst.problem;
    const HPolyhedron g = graph_polyhedron(pr);
    for (int i = 0; i < 30; ++i) {
      const Vec p = testing::random_int_vec(rng, pr.dims.p, -2, 2), x = testing::random_int_vec(rng, pr.dims.x, -2, 2);
      CHECK(feasible_polyhedron(pr, p).contains(x) == g.contains(concat(p, x)));
    }
  }
}

TEST_CASE("semi-infinite reduction") {
  SemiInfiniteFamily fam;
  fam.ap = {v({0})};
  fam.ax = {v({0, -1}), v({-1, 1})};
  fam.b = v({0});
  fam.t_lo = 0;
  fam.t_hi = 1;
  CHECK(fam.degree() == 1);
  CHECK(fam.reduction_points() == Vec{Scalar(0), Scalar(1)});
  // b(t) = −(t − 1/2)² − 1 with constant (p,x) part: concave in t, critical point added
  SemiInfiniteFamily quad;
  quad.ap = {v({0})};
  quad.ax = {v({1})};
  quad.b = {Scalar(-5, 4), Scalar(1), Scalar(-1)};
  quad.t_lo = 0;
  quad.t_hi = 1;
  CHECK(quad.degree() == 2);
  const Vec pts = quad.reduction_points();
  CHECK(std::find(pts.begin(), pts.end(), Scalar(1, 2)) != pts.end());
  SemiInfiniteFamily bad = quad;
  bad.b = {Scalar(0), Scalar(0), Scalar(0), Scalar(1)};
  CHECK(code_of([&] { bad.reduction_points(); }) == ErrorCode::UnsupportedConstraintKind);
}

TEST_CASE("solution points") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const BasePoint b = check_solution_point(ex41, zeros(3), zeros(1));
  CHECK(b.y == v({0, 0}));
  CHECK(b.exact);
  CHECK(code_of([&] { check_solution_point(ex41, zeros(3), v({1})); }) == ErrorCode::NotEfficient);
  CHECK(code_of([&] { check_solution_point(ex41, zeros(3), v({-1})); }) == ErrorCode::InfeasiblePoint);
  const ParametricProblem ex51 = builtin_example("example_5_1");
  CHECK(check_solution_point(ex51, zeros(1), zeros(2)).y == v({2, 3}));
  CHECK(check_solution_point(ex41, zeros(3), zeros(1), Variant::Weak).y == v({0, 0}));
  CHECK(check_solution_point(ex41, zeros(3), zeros(1), Variant::Proper).y == v({0, 0}));
  const ParametricProblem smooth = builtin_example("smooth_disk");
  const BasePoint sb = check_solution_point(smooth, zeros(1), v({-1, 0}));
  CHECK_FALSE(sb.exact);
  CHECK(std::abs(sb.y[0].get_d() - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("midpoint convexity of the image map on the shipped examples") {
  std::mt19937_64 rng(43);
  for (const auto& name : {"example_4_1", "example_5_1"}) {
    const ParametricProblem pr = builtin_example(name);
    for (int i = 0; i < 10; ++i) {
      const Vec p1 = testing::random_int_vec(rng, pr.dims.p, -2, 2), p2 = testing::random_int_vec(rng, pr.dims.p, -2, 2);
      const Vec x1 = *feasible_polyhedron(pr, p1).some_point(), x2 = *feasible_polyhedron(pr, p2).some_point();
      CHECK(midpoint_convexity_holds(pr, p1, x1, p2, x2));
    }
  }
}

TEST_CASE("variant names") {
  CHECK(parse_variant("weak") == Variant::Weak);
  CHECK(to_string(Variant::Proper) == "proper");
  CHECK(code_of([] { parse_variant("strong"); }) == ErrorCode::SchemaError);
}
