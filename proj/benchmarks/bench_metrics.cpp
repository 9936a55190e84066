#include <numbers>

#include <benchmark/benchmark.h>

#include <hypmetrics/balls.hpp>
#include <hypmetrics/halfspace.hpp>
#include <hypmetrics/inclusions.hpp>
#include <hypmetrics/metrics.hpp>
#include <hypmetrics/sup_oracle.hpp>

using namespace hypmetrics;
using std::numbers::pi;

namespace {

void BM_VHalfplane(benchmark::State& state) {
  const Point x{0.3, 0.7};
  const Point y{-1.2, 2.5};
  for (auto _ : state) benchmark::DoNotOptimize(v_halfplane(x, y));
}
BENCHMARK(BM_VHalfplane);

void BM_SPunctured(benchmark::State& state) {
  std::vector<Point> obstacles;
  for (int k = 0; k < state.range(0); ++k) obstacles.push_back(Point{0.1 * k, -0.05 * k});
  const Domain d = Domain::punctured(obstacles);
  const Point x{1.0, 2.0};
  const Point y{-2.0, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(s_metric(d, x, y));
}
BENCHMARK(BM_SPunctured)->Arg(1)->Arg(16)->Arg(256);

void BM_KPunctured(benchmark::State& state) {
  const Point x{1.0, 0.2};
  const Point y{-0.4, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(k_punctured(x, y));
}
BENCHMARK(BM_KPunctured);

void BM_VUnitDiskOracle(benchmark::State& state) {
  const Domain d = Domain::unit_ball();
  const Point x{0.5, 0.0};
  const Point y{0.0, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(v_metric(d, x, y));
}
BENCHMARK(BM_VUnitDiskOracle);

void BM_SupOracleHalfplane(benchmark::State& state) {
  const Domain d = Domain::half_space();
  const Point x{0.0, 1.0};
  const Point y{0.0, 2.0};
  SupOptions opt;
  opt.tol = 1e-10;
  opt.window = Window{-80.0, 80.0};
  opt.focus = {x, y};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_oracle(d, [&](const Point& z) { return angle_at(x, z, y); }, opt).value);
  }
}
BENCHMARK(BM_SupOracleHalfplane);

void BM_TraceBall(benchmark::State& state) {
  const Domain d = Domain::punctured({{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}});
  const auto rays = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace_ball(d, MetricKind::S, Point{0.75, 0.6}, 0.5, rays));
}
BENCHMARK(BM_TraceBall)->Arg(90)->Arg(720);

void BM_VerifyInclusion(benchmark::State& state) {
  const Domain d = Domain::punctured({{0.0, 0.0}});
  const double r = pi / 3;
  const auto samples = static_cast<std::size_t>(state.range(0));
  const BallSpec inner{MetricKind::S, best_radius(MetricKind::S, 1.0, r)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_inclusion(d, inner, {MetricKind::V, r}, Point{1.0, 0.0}, samples));
  }
}
BENCHMARK(BM_VerifyInclusion)->Arg(1000)->Arg(10000);

void BM_VBallCurve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vball_curve(pi / 4, 4096));
}
BENCHMARK(BM_VBallCurve);

}  // namespace

BENCHMARK_MAIN();
