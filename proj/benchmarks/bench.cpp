#include <benchmark/benchmark.h>

#include "qeq/catalog.hpp"
#include "qeq/coercivity.hpp"
#include "qeq/properties.hpp"
#include "qeq/reductions.hpp"
#include "qeq/solver.hpp"

using namespace qeq;

namespace {

void BM_RegionProject(benchmark::State& state) {
  ConvexRegion r = ConvexRegion::box(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  Vec a(2);
  a << 1, 1;
  r.add_halfspace(a, 1.0);
  r = r.intersect_origin_ball(1.2);
  Vec p(2);
  p << 3.0, -2.0;
  for (auto _ : state) benchmark::DoNotOptimize(r.project(p));
}
BENCHMARK(BM_RegionProject);

void BM_OracleEnumerate(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("e2-even");
  const ConvexRegion region = inst.C.intersect_origin_ball(4.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(solver::oracle_enumerate(inst, region, 0.01, 1e-6));
}
BENCHMARK(BM_OracleEnumerate);

void BM_SolveRestricted(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("e3-moving");
  for (auto _ : state)
    benchmark::DoNotOptimize(solver::solve_restricted(inst, 2.0, 0.01, 1e-6));
}
BENCHMARK(BM_SolveRestricted);

void BM_UccVerify(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("tz-counterexample");
  for (auto _ : state)
    benchmark::DoNotOptimize(coercivity::ucc_verify(inst, 2.0, 4000, 0));
}
BENCHMARK(BM_UccVerify);

void BM_ScanFixedPoint(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("e2-unbounded");
  const Bifunction& f = inst.f;
  const Vec z = Vec::Zero(1);
  auto descends = [&f](const Vec& x, const Vec& y) { return f(x, y) <= 1e-9; };
  for (auto _ : state)
    benchmark::DoNotOptimize(
        coercivity::scan_fixed_point(inst.K, descends, z, 1.0, 0.01, 10.0));
}
BENCHMARK(BM_ScanFixedPoint);

void BM_SimplexProbe(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("e2-even");
  for (auto _ : state)
    benchmark::DoNotOptimize(
        properties::check_properly_quasi_monotone(inst.f, inst.C, 3, 10000, 0));
}
BENCHMARK(BM_SimplexProbe);

void BM_BestResponse(benchmark::State& state) {
  const ProblemInstance inst = catalog_get("e5-gnep");
  Vec x(2);
  x << 0.25, 0.75;
  for (auto _ : state)
    benchmark::DoNotOptimize(reductions::best_response(*inst.game, 0, x, 0.05, 1e-6));
}
BENCHMARK(BM_BestResponse);

}  // namespace

BENCHMARK_MAIN();
