#include "assouad/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

namespace assouad::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::atomic<int> g_thread_limit{0};

}  // namespace

void set_thread_limit(int threads) { g_thread_limit.store(threads > 0 ? threads : 0); }

int thread_limit() {
  const int t = g_thread_limit.load();
  return t > 0 ? t : omp_get_max_threads();
}

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

std::optional<TriangleWitness> triangle_scan(std::span<const double> d, std::size_t n, double tol) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double deficit = d[i * n + k] - d[i * n + j] - d[j * n + k];
        if (deficit > tol) return TriangleWitness{i, j, k, deficit};
      }
  return std::nullopt;
}

double profile_excess(std::span<const double> d, std::size_t n) {
  double worst = -kInf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double gap = 0.0;
      for (std::size_t k = 0; k < n; ++k) gap = std::max(gap, std::abs(d[i * n + k] - d[j * n + k]));
      worst = std::max(worst, gap - d[i * n + j]);
    }
  return n < 2 ? 0.0 : worst;
}

double directed_hausdorff(std::span<const double> d, std::size_t n,
                          std::span<const std::size_t> from, std::span<const std::size_t> to) {
  double worst = 0.0;
  for (std::size_t a : from) {
    double best = kInf;
    for (std::size_t b : to) best = std::min(best, d[a * n + b]);
    worst = std::max(worst, best);
  }
  return worst;
}

Extent subset_extent(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx) {
  Extent e{0.0, kInf};
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const double v = d[idx[a] * n + idx[b]];
      e.diameter = std::max(e.diameter, v);
      e.separation = std::min(e.separation, v);
    }
  return e;
}

std::vector<double> all_pairs_shortest_paths(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i * n + i] = 0.0;
    for (const auto& [j, w] : adj[i]) dist[i * n + j] = std::min(dist[i * n + j], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + dist[k * n + j];
        if (via < dist[i * n + j]) dist[i * n + j] = via;
      }
    }
  return dist;
}

std::vector<BallNetProfile> ball_net_profiles(std::span<const double> d, std::size_t n,
                                              std::span<const std::size_t> net,
                                              std::span<const std::size_t> centers,
                                              std::span<const double> radii) {
  std::vector<BallNetProfile> out(centers.size() * radii.size());
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const std::size_t x = centers[c];
    for (std::size_t r = 0; r < radii.size(); ++r) {
      std::vector<std::size_t> members;
      for (std::size_t p : net)
        if (d[x * n + p] <= radii[r]) members.push_back(p);
      const Extent e = subset_extent(d, n, members);
      out[c * radii.size() + r] = {members.size(), e.diameter, e.separation};
    }
  }
  return out;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

double profile_excess(std::span<const double> d, std::size_t n) {
  if (n < 2) return 0.0;
  double worst = -kInf;
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) reduction(max : worst) num_threads(thread_limit())
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double* ri = d.data() + i * n;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* rj = d.data() + j * n;
      double gap = 0.0;
#pragma omp simd reduction(max : gap)
      for (std::size_t k = 0; k < n; ++k) gap = std::max(gap, std::abs(ri[k] - rj[k]));
      worst = std::max(worst, gap - ri[j]);
    }
  }
  return worst;
}

std::optional<TriangleWitness> triangle_scan(std::span<const double> d, std::size_t n, double tol) {
  // Every inequality d(a,c) <= d(a,b) + d(b,c) is the pair {a,b} seen from c,
  // so a clean pair scan proves the whole matrix. Only on failure do we pay
  // for the lexicographic witness search.
  if (profile_excess(d, n) <= tol) return std::nullopt;

  const auto rows = static_cast<std::int64_t>(n);
  std::vector<std::optional<TriangleWitness>> first(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_limit())
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n && !first[i]; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double deficit = d[i * n + k] - d[i * n + j] - d[j * n + k];
        if (deficit > tol) {
          first[i] = TriangleWitness{i, j, k, deficit};
          break;
        }
      }
  }
  for (auto& w : first)
    if (w) return w;
  return std::nullopt;
}

double directed_hausdorff(std::span<const double> d, std::size_t n,
                          std::span<const std::size_t> from, std::span<const std::size_t> to) {
  double worst = 0.0;
  const auto m = static_cast<std::int64_t>(from.size());
#pragma omp parallel for reduction(max : worst) num_threads(thread_limit()) if (m > 256)
  for (std::int64_t a = 0; a < m; ++a) {
    const double* ra = d.data() + from[static_cast<std::size_t>(a)] * n;
    double best = kInf;
    for (std::size_t b : to) best = std::min(best, ra[b]);
    worst = std::max(worst, best);
  }
  return worst;
}

Extent subset_extent(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx) {
  double diam = 0.0;
  double sep = kInf;
  const auto m = static_cast<std::int64_t>(idx.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(max : diam) reduction(min : sep) \
    num_threads(thread_limit()) if (m > 512)
  for (std::int64_t a = 0; a < m; ++a) {
    const double* ra = d.data() + idx[static_cast<std::size_t>(a)] * n;
    for (std::size_t b = static_cast<std::size_t>(a) + 1; b < idx.size(); ++b) {
      const double v = ra[idx[b]];
      diam = std::max(diam, v);
      sep = std::min(sep, v);
    }
  }
  return {diam, sep};
}

std::vector<double> all_pairs_shortest_paths(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n * n, kInf);
  const auto sources = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_limit())
  for (std::int64_t ss = 0; ss < sources; ++ss) {
    const auto s = static_cast<std::size_t>(ss);
    double* row = dist.data() + s * n;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double nd = du + w;
        if (nd < row[v]) {
          row[v] = nd;
          heap.emplace(nd, v);
        }
      }
    }
  }
  return dist;
}

std::vector<BallNetProfile> ball_net_profiles(std::span<const double> d, std::size_t n,
                                              std::span<const std::size_t> net,
                                              std::span<const std::size_t> centers,
                                              std::span<const double> radii) {
  std::vector<BallNetProfile> out(centers.size() * radii.size());
  const auto m = static_cast<std::int64_t>(centers.size());
#pragma omp parallel num_threads(thread_limit())
  {
    std::vector<std::size_t> order;
    std::vector<std::size_t> members;
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t cc = 0; cc < m; ++cc) {
      const auto c = static_cast<std::size_t>(cc);
      const double* rx = d.data() + centers[c] * n;
      order.assign(net.begin(), net.end());
      std::sort(order.begin(), order.end(), [rx](std::size_t a, std::size_t b) {
        return rx[a] < rx[b] || (rx[a] == rx[b] && a < b);
      });
      members.clear();
      double diam = 0.0;
      double sep = kInf;
      std::size_t next = 0;
      for (std::size_t r = 0; r < radii.size(); ++r) {
        while (next < order.size() && rx[order[next]] <= radii[r]) {
          const std::size_t p = order[next++];
          const double* rp = d.data() + p * n;
          for (std::size_t q : members) {
            diam = std::max(diam, rp[q]);
            sep = std::min(sep, rp[q]);
          }
          members.push_back(p);
        }
        out[c * radii.size() + r] = {members.size(), diam, sep};
      }
    }
  }
  return out;
}

}  // namespace parallel

}  // namespace assouad::kernels
