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

double norm(const DVec& a) {
  double s = 0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("epi cloud stays in the δ-ball and contains the base") {
  const ParametricProblem pr = builtin_example("example_4_1");
  EpiOptions o;
  o.grid = 3;
  const EpiCloud c = epi_cloud(pr, zeros(3), zeros(2), o);
  CHECK(c.n_p == 3);
  CHECK(c.base == DVec(5, 0.0));
  CHECK(c.grid == 3);
  CHECK_FALSE(c.samples.empty());
  bool has_base = false;
  for (const DVec& s : c.samples) {
    REQUIRE(s.size() == 5);
    DVec d(5);
    for (int i = 0; i < 5; ++i) d[i] = s[i] - c.base[i];
    CHECK(norm(d) <= std::sqrt(3.0) * o.delta + 1e-9 + o.delta);
    if (norm(d) < 1e-12) has_base = true;
  }
  CHECK(has_base);
  o.cap = 50;
  CHECK(epi_cloud(pr, zeros(3), zeros(2), o).samples.size() <= 50);
}

TEST_CASE("Fréchet test accepts the formula and rejects perturbations") {
  const ParametricProblem pr = builtin_example("example_4_1");
  const EpiCloud c = epi_cloud(pr, zeros(3), zeros(2));
  CHECK(frechet_normal_test(c, {3, 6, 3, -1, -1}));
  CHECK(frechet_normal_test(c, {0, 0, 0, 0, 0}));
  CHECK_FALSE(frechet_normal_test(c, {3.5, 6, 3, -1, -1}));
  CHECK_FALSE(frechet_normal_test(c, {3, 6, 3, 1, 0}));
  CHECK(frechet_quotient(c, {3, 6, 3, -1, -1}) <= 1e-9);
  CHECK(frechet_quotient(c, {3, 6.5, 3, -1, -1}) > 1e-3);
}

TEST_CASE("one-dimensional parameter: example with a semi-infinite constraint") {
  const ParametricProblem pr = builtin_example("example_5_1");
  const EpiCloud c = epi_cloud(pr, zeros(1), v({2, 3}));
  CHECK(frechet_normal_test(c, {0, -2, -5}));
  CHECK_FALSE(frechet_normal_test(c, {0.5, -2, -5}));
  CHECK_FALSE(frechet_normal_test(c, {-0.5, -2, -5}));
}

TEST_CASE("product norm is weaker than the Euclidean norm") {
  const ParametricProblem pr = builtin_example("example_4_1");
  const EpiCloud c = epi_cloud(pr, zeros(3), zeros(2));
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-4, 7);
  for (int i = 0; i < 20; ++i) {
    DVec vs(5);
    for (double& x : vs) x = u(rng);
    CHECK(frechet_quotient(c, vs, true) <= frechet_quotient(c, vs, false) + 1e-12);
  }
}

TEST_CASE("lone base gives a zero quotient") {
  EpiCloud c;
  c.base = {1, 2};
  c.n_p = 1;
  c.samples = {{1, 2}};
  CHECK(frechet_quotient(c, {5, 5}) == 0);
  CHECK(frechet_normal_test(c, {5, 5}));
}

TEST_CASE("finite differences match the analytic Jacobian") {
  const ParametricProblem pr = builtin_example("smooth_disk");
  for (const DVec& x : {DVec{-1, 0}, DVec{0.3, -0.2}, DVec{1.5, 2}}) {
    const DVec p{0.25};
    const DMatrix fd = finite_diff_gradient(pr, p, x);
    const DMatrix an = objective_jacobian(pr, p, x);
    REQUIRE(fd.size() == an.size());
    for (std::size_t i = 0; i < fd.size(); ++i)
      for (std::size_t j = 0; j < fd[i].size(); ++j) CHECK(fd[i][j] == doctest::Approx(an[i][j]).epsilon(1e-6));
  }
  const ParametricProblem aff = builtin_example("example_4_1");
  const DMatrix g = finite_diff_gradient(aff, {0, 0, 0}, {1});
  CHECK(g[0][0] == doctest::Approx(0));
  CHECK(g[0][3] == doctest::Approx(1));
  CHECK(g[1][3] == doctest::Approx(2));
}

TEST_CASE("brute force minimal points") {
  PointCloud cl{2, {v({1, 3}), v({2, 2}), v({3, 1}), v({2, 3}), v({1, 3}), v({4, 4})}};
  const auto idx = brute_force_min(cl, PolyCone::nonnegative_orthant(2));
  CHECK(idx == std::vector<std::size_t>{0, 1, 2});
  // with the trivial cone every first occurrence is minimal
  CHECK(brute_force_min(cl, PolyCone::origin(2)) == std::vector<std::size_t>{0, 1, 2, 3, 5});
  // agrees with the exact classifier on the frontier sample
  const ParametricProblem pr = builtin_example("example_5_1");
  const PointCloud f = frontier_sample(pr, zeros(1), weight_grid(pr.cone));
  CHECK(brute_force_min(f, pr.cone.cone()).size() == f.points.size());
}
