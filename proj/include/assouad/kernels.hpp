#pragma once

// Data-parallel inner loops shared by the metric, covering, dimension and
// construction modules.
//
// Every kernel exists twice: `serial::` is the straightforward reference
// implementation kept for testing and benchmarking, `parallel::` is the
// OpenMP version the library calls. Both return identical results; the
// parallel reductions are max/min or first-index selections, which do not
// depend on scheduling.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace assouad::kernels {

/// Caps the OpenMP worker count used by `parallel::` kernels. Values <= 0
/// restore the default (the runtime's available cores).
void set_thread_limit(int threads);
int thread_limit();

struct TriangleWitness {
  std::size_t i, j, k;
  double deficit;  // d(i,k) - d(i,j) - d(j,k)
};

struct Extent {
  double diameter = 0.0;
  double separation = 0.0;  // +inf for fewer than two points
};

/// count / diameter / separation of (net ∩ B(center, radius)).
struct BallNetProfile {
  std::size_t count = 0;
  double diameter = 0.0;
  double separation = 0.0;
};

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

namespace serial {

/// Lexicographically first (i, j, k) with d(i,k) > d(i,j) + d(j,k) + tol.
std::optional<TriangleWitness> triangle_scan(std::span<const double> d, std::size_t n, double tol);

/// max over i < j of ( max_k |d(i,k) - d(j,k)| - d(i,j) ).
double profile_excess(std::span<const double> d, std::size_t n);

/// max over a in `from` of min over b in `to` of d(a, b).
double directed_hausdorff(std::span<const double> d, std::size_t n,
                          std::span<const std::size_t> from, std::span<const std::size_t> to);

Extent subset_extent(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx);

/// Floyd-Warshall. Unreachable pairs are +inf.
std::vector<double> all_pairs_shortest_paths(const Adjacency& adj);

/// Row-major [center][radius] profiles. `radii` must be ascending.
std::vector<BallNetProfile> ball_net_profiles(std::span<const double> d, std::size_t n,
                                              std::span<const std::size_t> net,
                                              std::span<const std::size_t> centers,
                                              std::span<const double> radii);

}  // namespace serial

namespace parallel {

std::optional<TriangleWitness> triangle_scan(std::span<const double> d, std::size_t n, double tol);
double profile_excess(std::span<const double> d, std::size_t n);
double directed_hausdorff(std::span<const double> d, std::size_t n,
                          std::span<const std::size_t> from, std::span<const std::size_t> to);
Extent subset_extent(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx);
/// Dijkstra from every source.
std::vector<double> all_pairs_shortest_paths(const Adjacency& adj);
std::vector<BallNetProfile> ball_net_profiles(std::span<const double> d, std::size_t n,
                                              std::span<const std::size_t> net,
                                              std::span<const std::size_t> centers,
                                              std::span<const double> radii);

}  // namespace parallel

}  // namespace assouad::kernels
