#include <benchmark/benchmark.h>

#include "coderiv/calculus.hpp"
#include "coderiv/coderivative.hpp"
#include "coderiv/constraint_calculus.hpp"
#include "coderiv/domination.hpp"
#include "coderiv/oracle.hpp"
#include "coderiv/problem_io.hpp"

using namespace coderiv;

namespace {

void BM_ProfileCoderivative(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_4_1");
  const BasePoint base = check_solution_point(pr, *pr.base_p, *pr.base_x);
  const Vec ys = from_ints({1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(profile_coderivative_F(pr, base, ys));
}
BENCHMARK(BM_ProfileCoderivative);

void BM_SemiInfiniteCoderivative(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_5_1");
  const BasePoint base = check_solution_point(pr, *pr.base_p, *pr.base_x);
  const Vec ys = from_ints({2, 5});
  for (auto _ : state) benchmark::DoNotOptimize(semi_infinite_frontier_coderivative(pr, base, ys));
}
BENCHMARK(BM_SemiInfiniteCoderivative);

void BM_ChainRule(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_4_1");
  const PolyMap h = pairing_map(pr);
  const PolyMap outer = objective_profile_map(pr, pr.cone);
  const Vec ys = from_ints({1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(chain_coderivative(outer, h, zeros(3), zeros(2), ys));
}
BENCHMARK(BM_ChainRule);

void BM_FrontierSample(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_2_2");
  const auto weights = weight_grid(pr.cone, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frontier_sample(pr, *pr.base_p, weights));
}
BENCHMARK(BM_FrontierSample)->Arg(5)->Arg(21);

void BM_Domination(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_4_1");
  DominationOptions o;
  o.param_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_domination(pr, zeros(3), Variant::Min, o));
}
BENCHMARK(BM_Domination)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EpiCloudAndTest(benchmark::State& state) {
  const ParametricProblem pr = builtin_example("example_4_1");
  for (auto _ : state) {
    const EpiCloud c = epi_cloud(pr, zeros(3), zeros(2));
    benchmark::DoNotOptimize(frechet_normal_test(c, {3, 6, 3, -1, -1}));
  }
}
BENCHMARK(BM_EpiCloudAndTest)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
