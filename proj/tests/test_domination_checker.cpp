#include <doctest.h>

#include <cmath>

#include "coderiv/domination.hpp"
#include "coderiv/error.hpp"
#include "coderiv/problem_io.hpp"
#include "support/instances.hpp"

using namespace coderiv;

namespace {

Vec v(std::initializer_list<long> xs) { return from_ints(xs); }

DominationOptions quick(std::size_t samples = 8) {
  DominationOptions o;
  o.param_samples = samples;
  o.grid = 7;
  return o;
}

}  // namespace

TEST_CASE("holds on the shipped affine examples") {
  for (const char* name : {"example_4_1", "example_5_1", "example_2_1"}) {
    const ParametricProblem pr = builtin_example(name);
    const DominationCertificate c = check_domination(pr, *pr.base_p, Variant::Min, quick());
    CAPTURE(name);
    CHECK(c.holds_empirically);
    CHECK(c.violations.empty());
    CHECK(c.n_param_samples == 8);
    CHECK(c.n_image_samples > 0);
    CHECK(c.seed == 0x5EED);
    CHECK(c.radius == doctest::Approx(0.5));
  }
}

TEST_CASE("fails on a ray in the negative cone") {
  const ParametricProblem pr = builtin_example("ray_counterexample");
  const DominationCertificate c = check_domination(pr, v({0}), Variant::Min, quick());
  CHECK_FALSE(c.holds_empirically);
  REQUIRE(c.violations.size() == 8);
  for (const auto& viol : c.violations) {
    CHECK(std::isinf(viol.distance));
    CHECK(viol.reason == "frontier empty");
  }
  CHECK(std::is_sorted(c.violations.begin(), c.violations.end(),
                       [](const Violation& a, const Violation& b) { return a.p < b.p; }));
}

TEST_CASE("parameter samples are prefix-stable") {
  const ParametricProblem pr = builtin_example("ray_counterexample");
  const DominationCertificate small = check_domination(pr, v({0}), Variant::Min, quick(8));
  const DominationCertificate big = check_domination(pr, v({0}), Variant::Min, quick(32));
  CHECK(big.violations.size() >= small.violations.size());
  for (const auto& viol : small.violations) {
    const bool found = std::any_of(big.violations.begin(), big.violations.end(),
                                   [&](const Violation& w) { return w.p == viol.p; });
    CHECK(found);
  }
  // same seed, same certificate
  const DominationCertificate again = check_domination(pr, v({0}), Variant::Min, quick(8));
  REQUIRE(again.violations.size() == small.violations.size());
  for (std::size_t i = 0; i < again.violations.size(); ++i) CHECK(again.violations[i].p == small.violations[i].p);
}

TEST_CASE("agrees with the exact test on random affine instances") {
  for (const auto& inst : testing::random_instances(81, 8)) {
    const auto& pr = inst.problem;
    const bool exact = exact_domination_at(pr, inst.base.p, Variant::Min);
    const DominationCertificate c = check_domination(pr, inst.base.p, Variant::Min, quick(4));
    CHECK(exact == c.holds_empirically);
  }
  const ParametricProblem ray = builtin_example("ray_counterexample");
  CHECK_FALSE(exact_domination_at(ray, v({0}), Variant::Min));
}

TEST_CASE("weak and strict tilde modes") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  DominationOptions o = quick(4);
  CHECK(check_domination(ex41, zeros(3), Variant::Weak, o).holds_empirically);
  o.strict_tilde = true;
  const DominationCertificate strict = check_domination(ex41, zeros(3), Variant::Weak, o);
  CHECK(strict.strict_tilde);
  CHECK(strict.holds_empirically);
  // ignored outside the weak variant
  CHECK_FALSE(check_domination(ex41, zeros(3), Variant::Min, o).strict_tilde);

  const ParametricProblem ex51 = builtin_example("example_5_1");
  try {
    check_domination(ex51, zeros(1), Variant::Weak, o);
    FAIL("expected MissingTildeCone");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingTildeCone);
  }
  try {
    check_domination(ex51, zeros(2), Variant::Min, o);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("smooth problem") {
  const ParametricProblem pr = builtin_example("smooth_disk");
  const DominationCertificate c = check_domination(pr, v({0}), Variant::Min, quick(4));
  CHECK(c.holds_empirically);
  CHECK_FALSE(c.truncated);
}

TEST_CASE("unbounded feasible sets are truncated by the image box") {
  const ParametricProblem ex41 = builtin_example("example_4_1");
  DominationOptions o = quick(2);
  o.box = 3;
  const DominationCertificate c = check_domination(ex41, zeros(3), Variant::Min, o);
  CHECK(c.truncated);
  CHECK(c.holds_empirically);
}
