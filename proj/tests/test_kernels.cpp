#include <doctest.h>

#include <numeric>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/kernels.hpp"
#include "oracles.hpp"

using namespace assouad;
namespace ks = assouad::kernels::serial;
namespace kp = assouad::kernels::parallel;

namespace {

std::vector<std::size_t> random_indices(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (rng() % 3 == 0) idx.push_back(i);
  if (idx.empty()) idx.push_back(0);
  return idx;
}

// A corrupted matrix with a known set of triangle violations.
std::vector<double> corrupted(const FiniteMetricSpace& x, std::mt19937_64& rng) {
  std::vector<double> d(x.matrix().begin(), x.matrix().end());
  const std::size_t n = x.size();
  const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
  d[i * n + j] = d[j * n + i] = d[i * n + j] * 5.0;
  return d;
}

// Oversubscribe so that the parallel kernels really split work even on a
// single-core machine.
struct ForceThreads {
  ForceThreads() { kernels::set_thread_limit(4); }
};
const ForceThreads force_threads;

}  // namespace

TEST_CASE("triangle_scan: serial and parallel agree and find the first violation") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const auto x = oracle::random_plane_space(12, rng, 10);
    CHECK_FALSE(ks::triangle_scan(x.matrix(), x.size(), 1e-9).has_value());
    CHECK_FALSE(kp::triangle_scan(x.matrix(), x.size(), 1e-9).has_value());
    const auto d = corrupted(x, rng);
    const auto a = ks::triangle_scan(d, x.size(), 1e-9);
    const auto b = kp::triangle_scan(d, x.size(), 1e-9);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->i == b->i);
      CHECK(a->j == b->j);
      CHECK(a->k == b->k);
      CHECK(a->deficit == b->deficit);
    }
  }
}

TEST_CASE("profile_excess: serial and parallel agree, and it is <= 0 on metrics") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_graph_space(10, rng);
    const double a = ks::profile_excess(x.matrix(), x.size());
    CHECK(a == kp::profile_excess(x.matrix(), x.size()));
    CHECK(a <= 1e-12);
  }
}

TEST_CASE("directed_hausdorff and subset_extent agree across implementations") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto x = oracle::random_plane_space(15, rng, 8);
    const auto a = random_indices(x.size(), rng), b = random_indices(x.size(), rng);
    CHECK(ks::directed_hausdorff(x.matrix(), x.size(), a, b) ==
          kp::directed_hausdorff(x.matrix(), x.size(), a, b));
    const auto e1 = ks::subset_extent(x.matrix(), x.size(), a);
    const auto e2 = kp::subset_extent(x.matrix(), x.size(), a);
    CHECK(e1.diameter == e2.diameter);
    CHECK(e1.separation == e2.separation);
    CHECK(e1.diameter == diameter(SubsetView(x, a)));
  }
}

TEST_CASE("all-pairs shortest paths: Floyd-Warshall and Dijkstra agree") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> len(0.1, 2.0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + rng() % 20;
    kernels::Adjacency adj(n);
    for (std::size_t e = 0; e < 2 * n; ++e) {
      const std::size_t u = rng() % n, v = rng() % n;
      if (u == v) continue;
      const double l = len(rng);
      adj[u].push_back({v, l});
      adj[v].push_back({u, l});
    }
    const auto a = ks::all_pairs_shortest_paths(adj);
    const auto b = kp::all_pairs_shortest_paths(adj);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::isinf(a[i])) CHECK(std::isinf(b[i]));
      else CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("ball_net_profiles: serial and parallel agree with direct counts") {
  const auto x = sup_grid(9);
  std::vector<std::size_t> all(x.size());
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 rng(25);
  const auto net = random_indices(x.size(), rng);
  const std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
  const auto a = ks::ball_net_profiles(x.matrix(), x.size(), net, all, radii);
  const auto b = kp::ball_net_profiles(x.matrix(), x.size(), net, all, radii);
  REQUIRE(a.size() == all.size() * radii.size());
  for (std::size_t c = 0; c < all.size(); ++c)
    for (std::size_t g = 0; g < radii.size(); ++g) {
      const auto& p = a[c * radii.size() + g];
      const auto& q = b[c * radii.size() + g];
      CHECK(p.count == q.count);
      CHECK(p.diameter == q.diameter);
      CHECK(p.separation == q.separation);
      std::size_t direct = 0;
      for (std::size_t v : net) direct += x(c, v) <= radii[g];
      CHECK(p.count == direct);
    }
}

TEST_CASE("thread limit round trip") {
  kernels::set_thread_limit(2);
  CHECK(kernels::thread_limit() == 2);
  kernels::set_thread_limit(0);
  CHECK(kernels::thread_limit() >= 1);
  kernels::set_thread_limit(4);
}
