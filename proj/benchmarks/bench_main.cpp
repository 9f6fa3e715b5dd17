#include "qhlab/analysis.hpp"
#include "qhlab/metrics.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace qhlab;

namespace {

const DomainSpec& disk() {
  static const DomainSpec d(Ball{Point(0, 0), 1.0});
  return d;
}

double mesh_for(std::int64_t inv) { return 1.0 / static_cast<double>(inv); }

void BM_SampleNet(benchmark::State& state) {
  const double h = mesh_for(state.range(0));
  for (auto _ : state) {
    auto net = sample_net(disk(), h, 1);
    benchmark::DoNotOptimize(net.size());
  }
}
BENCHMARK(BM_SampleNet)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_QhFrom(benchmark::State& state) {
  auto net = sample_net(disk(), mesh_for(state.range(0)), 1);
  const std::size_t src = net.nearest(Point(0, 0)).first;
  for (auto _ : state) {
    auto d = qh_from(net, src);
    benchmark::DoNotOptimize(d.data());
  }
  state.counters["points"] = static_cast<double>(net.size());
}
BENCHMARK(BM_QhFrom)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_QhPair(benchmark::State& state) {
  auto net = sample_net(disk(), mesh_for(state.range(0)), 1);
  for (auto _ : state) {
    auto r = qh_distance(net, Point(-0.5, 0.1), Point(0.9, 0));
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_QhPair)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_DeltaEstimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  PointList pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
  auto m = MetricOracle::euclidean(pts);
  for (auto _ : state) {
    auto r = delta_estimate(m, 2'000'000, 1);
    benchmark::DoNotOptimize(r.delta);
  }
}
BENCHMARK(BM_DeltaEstimate)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_QsScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PointList pts;
  for (std::size_t i = 0; i < n; ++i) {
    double a = 2.399963 * static_cast<double>(i);
    double r = std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  auto f = MapSpec::radial_power(2);
  for (auto _ : state) {
    auto env = qs_scan(f, pts);
    benchmark::DoNotOptimize(env.max_sup());
  }
  state.counters["triples"] = static_cast<double>(n * (n - 1) * (n - 2));
}
BENCHMARK(BM_QsScan)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
