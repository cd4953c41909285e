// Serial reference vs OpenMP kernels on sup grids of growing size.

#include <benchmark/benchmark.h>

#include <map>
#include <numeric>

#include "assouad/constructions.hpp"
#include "assouad/kernels.hpp"

namespace {

using namespace assouad;

const FiniteMetricSpace& grid(std::size_t side) {
  static std::map<std::size_t, FiniteMetricSpace> cache;
  auto it = cache.find(side);
  if (it == cache.end()) it = cache.emplace(side, sup_grid(side)).first;
  return it->second;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

template <bool Parallel>
void BM_TriangleScan(benchmark::State& state) {
  const auto& x = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto w = Parallel ? kernels::parallel::triangle_scan(x.matrix(), x.size(), 1e-9)
                      : kernels::serial::triangle_scan(x.matrix(), x.size(), 1e-9);
    benchmark::DoNotOptimize(w);
  }
  state.counters["points"] = static_cast<double>(x.size());
}

template <bool Parallel>
void BM_ProfileExcess(benchmark::State& state) {
  const auto& x = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double v = Parallel ? kernels::parallel::profile_excess(x.matrix(), x.size())
                        : kernels::serial::profile_excess(x.matrix(), x.size());
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_BallNetProfiles(benchmark::State& state) {
  const auto& x = grid(static_cast<std::size_t>(state.range(0)));
  const auto all = iota_indices(x.size());
  const std::vector<double> radii{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  for (auto _ : state) {
    auto v = Parallel ? kernels::parallel::ball_net_profiles(x.matrix(), x.size(), all, all, radii)
                      : kernels::serial::ball_net_profiles(x.matrix(), x.size(), all, all, radii);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_ShortestPaths(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  kernels::Adjacency adj(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    adj[i].push_back({i + 1, 1.0});
    adj[i + 1].push_back({i, 1.0});
  }
  for (auto _ : state) {
    auto v = Parallel ? kernels::parallel::all_pairs_shortest_paths(adj)
                      : kernels::serial::all_pairs_shortest_paths(adj);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_TriangleScan<false>)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleScan<true>)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileExcess<false>)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileExcess<true>)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallNetProfiles<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallNetProfiles<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShortestPaths<false>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShortestPaths<true>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
