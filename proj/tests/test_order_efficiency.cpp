#include <doctest.h>

#include <algorithm>
#include <random>

#include "coderiv/error.hpp"
#include "coderiv/oracle.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;

namespace {

Vec v(std::initializer_list<long> xs) { return from_ints(xs); }

PointCloud cloud(std::vector<Vec> pts) { return {pts.front().size(), std::move(pts)}; }

std::vector<std::size_t> idx(std::initializer_list<std::size_t> xs) { return xs; }

}  // namespace

TEST_CASE("minimal points: literal oracle first") {
  const OrderCone k = OrderCone::orthant(2);
  const PointCloud c = cloud({v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})});
  CHECK(brute_force_min(c, k.cone()) == idx({0}));
  CHECK(min_points(c, k).indices == idx({0}));
  // samples of F(1) = {(t,t) : t ≥ 1}
  const PointCloud diag{2, {v({1, 1}), {Scalar(3, 2), Scalar(3, 2)}, v({2, 2})}};
  CHECK(min_points(diag, k).indices == idx({0}));
  CHECK(min_points(cloud({v({4, -1})}), k).indices == idx({0}));
  CHECK_THROWS_AS(min_points(PointCloud{2, {}}, k), Error);
}

TEST_CASE("duplicates keep their first occurrence") {
  const OrderCone k = OrderCone::orthant(2);
  const PointCloud c = cloud({v({1, 1}), v({0, 2}), v({1, 1})});
  CHECK(min_points(c, k).indices == idx({0, 1}));
  CHECK(brute_force_min(c, k.cone()) == idx({0, 1}));
}

TEST_CASE("weak minimal points") {
  const OrderCone k = OrderCone::orthant(2);
  CHECK(wmin_points(cloud({v({0, 0}), v({0, 1}), v({1, 0})}), k).indices == idx({0, 1, 2}));
  CHECK(wmin_points(cloud({v({0, 0}), v({1, 1})}), k).indices == idx({0}));
  const OrderCone thin(PolyCone::from_generators(2, {v({1, 0})}));
  CHECK_THROWS_AS(wmin_points(cloud({v({0, 0})}), thin), Error);
}

TEST_CASE("proper minimal points carry positive weights") {
  const OrderCone k = OrderCone::orthant(2);
  const auto r = prmin_points(cloud({v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})}), k);
  REQUIRE(r.indices == idx({0}));
  CHECK(r.weights.front() == v({1, 1}));
  // segment endpoints of a frontier are proper, the middle point too
  const auto seg = prmin_points(cloud({v({0, 2}), v({1, 1}), v({2, 0})}), k);
  CHECK(seg.indices == idx({0, 1, 2}));
  for (const Vec& w : seg.weights) CHECK(k.dual_interior_contains(w));
  // a pointed cone always has a solid dual, so a ray still certifies
  const OrderCone thin(PolyCone::from_generators(2, {v({1, 0})}));
  const auto r2 = prmin_points(cloud({v({0, 0}), v({1, 0}), v({0, 1})}), thin);
  CHECK(r2.indices == idx({0, 2}));
  for (const Vec& w : r2.weights) CHECK(thin.dual_interior_contains(w));
}

TEST_CASE("inclusion chain and brute force agreement on random clouds") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const std::size_t dim = i % 3 == 0 ? 3 : 2;
    const OrderCone k = i % 4 == 1 ? OrderCone(PolyCone::from_generators(2, {v({2, 1}), v({1, 2})}))
                                   : OrderCone::orthant(dim);
    const PointCloud c = testing::random_cloud(rng, k.dim(), static_cast<std::size_t>(testing::draw(rng, 1, 120)));
    const auto mn = min_points(c, k).indices;
    const auto wm = wmin_points(c, k).indices;
    const auto pm = prmin_points(c, k).indices;
    CHECK(mn == brute_force_min(c, k.cone()));
    CHECK(std::includes(mn.begin(), mn.end(), pm.begin(), pm.end()));
    CHECK(std::includes(wm.begin(), wm.end(), mn.begin(), mn.end()));
  }
}

TEST_CASE("adding a dominated copy never changes the minimal set") {
  std::mt19937_64 rng(22);
  const OrderCone k = OrderCone::orthant(2);
  for (int i = 0; i < 20; ++i) {
    PointCloud c = testing::random_cloud(rng, 2, 30);
    const auto before = min_points(c, k).indices;
    c.points.push_back(add(c.points[before.front()], v({1, 0})));
    CHECK(min_points(c, k).indices == before);
  }
}

TEST_CASE("weight grids are normalized and inside the dual") {
  const OrderCone k = OrderCone::orthant(2);
  const auto w = weight_grid(k);
  CHECK(w.size() == 21);
  for (const Vec& x : w) {
    CHECK(x[0] + x[1] == 1);
    CHECK(k.dual_interior_contains(x));
  }
  CHECK(weight_grid(k, 21, true).size() == 23);
  for (const Vec& x : weight_grid(OrderCone::orthant(3), 5)) CHECK(OrderCone::orthant(3).dual_interior_contains(x));
}

TEST_CASE("frontier samples of the shipped examples") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  const PointCloud a = frontier_sample(ex41, v({1, 0, 0}), weight_grid(ex41.cone));
  CHECK(a.points == std::vector<Vec>{v({1, 2})});
  const ParametricProblem ex51 = builtin_example("example_5_1");
  for (const Vec& p : {v({0}), v({3}), v({-2})})
    CHECK(frontier_sample(ex51, p, weight_grid(ex51.cone)).points == std::vector<Vec>{v({2, 3})});
  const ParametricProblem ray = builtin_example("ray_counterexample");
  CHECK_THROWS_AS(frontier_sample(ray, v({0}), {v({1, 1})}), Error);
  try {
    frontier_sample(ray, v({0}), {v({1, 1})});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundedScalarization);
  }
  CHECK_THROWS_AS(frontier_sample(ex41, v({1, 0, 0}), {v({-1, 1})}), Error);
}

TEST_CASE("frontier samples are pairwise incomparable") {
  for (const auto& inst : testing::random_instances(31, 8)) {
    const auto& pr = inst.problem;
    const PointCloud c = frontier_sample(pr, inst.base.p, weight_grid(pr.cone));
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (std::size_t j = 0; j < c.points.size(); ++j)
        if (i != j) CHECK_FALSE(pr.cone.contains(sub(c.points[i], c.points[j])));
  }
}

TEST_CASE("numeric frontier on the smooth example") {
  // at p = 0 the ideal point is attained; at p = 1/2 the frontier is a curve
  CHECK(frontier_sample(builtin_example("smooth_disk"), v({0}), weight_grid(OrderCone::orthant(2), 5)).points.size() == 1);
  const ParametricProblem pr = builtin_example("smooth_disk");
  const FrontierSample fs = frontier_sample_detailed(pr, {Scalar(1, 2)}, weight_grid(pr.cone, 5));
  CHECK_FALSE(fs.exact);
  REQUIRE(fs.cloud.points.size() >= 2);
  for (const DVec& x : [&] {
         std::vector<DVec> xs;
         for (const Vec& p : fs.preimages) xs.push_back(to_doubles(p));
         return xs;
       }())
    CHECK(x[0] * x[0] + x[1] * x[1] <= 1.5 + 1e-6);
}
