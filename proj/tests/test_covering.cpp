#include <doctest.h>

#include <functional>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/covering.hpp"
#include "assouad/errors.hpp"
#include "oracles.hpp"

using namespace assouad;

namespace {

// Fewest blocks of diameter <= r partitioning `pts`, over every set
// partition.
std::size_t min_blocks_by_partitions(const FiniteMetricSpace& x, const std::vector<std::size_t>& pts, double r) {
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t best = pts.size();
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (blocks.size() >= best) return;
    if (k == pts.size()) {
      best = blocks.size();
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      bool ok = true;
      for (auto v : blocks[b]) ok = ok && x(v, pts[k]) <= r * (1 + 1e-9);
      if (!ok) continue;
      blocks[b].push_back(pts[k]);
      place(k + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({pts[k]});
    place(k + 1);
    blocks.pop_back();
  };
  place(0);
  return best;
}

void check_certificate(const FiniteMetricSpace& x, const SubsetView& s, const CoverCertificate& c) {
  CHECK(c.count == c.blocks.size());
  std::vector<int> hit(x.size(), 0);
  for (const auto& b : c.blocks) {
    CHECK(diameter(b) <= c.radius * (1 + 1e-9));
    for (auto v : b.indices()) {
      CHECK(s.contains(v));
      ++hit[v];
    }
  }
  for (auto v : s.indices()) CHECK(hit[v] >= 1);
}

}  // namespace

TEST_CASE("covering a progression") {
  const auto x = arithmetic_progression(10);
  const auto all = SubsetView::all(x);
  const auto c = covering_number(x, all, 2.0, CoverMode::greedy);
  CHECK(c.count == 4);  // blocks of three consecutive points
  check_certificate(x, all, c);
  const auto e = covering_number(x, all, 2.0, CoverMode::exact);
  CHECK(e.count == 4);
  CHECK(e.exactness == Exactness::exact);
  CHECK(c.exactness == Exactness::upper_bound);
  CHECK(covering_number(x, all, 0.5, CoverMode::greedy).count == 10);
  CHECK(covering_number(x, all, 9.0, CoverMode::exact).count == 1);
}

TEST_CASE("exact mode refuses large subsets") {
  const auto x = arithmetic_progression(30);
  CHECK_THROWS_AS(covering_number(x, SubsetView::all(x), 2.0, CoverMode::exact), ExactLimitExceeded);
  CoverOptions opt;
  opt.exact_cover_limit = 30;
  CHECK_NOTHROW(covering_number(x, SubsetView::all(x), 2.0, CoverMode::exact, opt));
}

TEST_CASE("property: exact covering number matches partition enumeration") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 80; ++t) {
    const auto x = oracle::random_plane_space(3 + rng() % 7, rng, 6);
    const auto s = SubsetView::all(x);
    const double r = 1.0 + static_cast<double>(rng() % 40) / 10.0;
    const auto exact = covering_number(x, s, r, CoverMode::exact);
    const auto greedy = covering_number(x, s, r, CoverMode::greedy);
    check_certificate(x, s, exact);
    check_certificate(x, s, greedy);
    CHECK(exact.count == min_blocks_by_partitions(x, s.indices(), r));
    CHECK(exact.count <= greedy.count);
  }
}

TEST_CASE("property: covering numbers are monotone in r and in the subset") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_plane_space(10, rng, 7);
    const auto all = SubsetView::all(x);
    const SubsetView part(x, {0, 1, 2, 3, 4});
    std::size_t prev = x.size() + 1;
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const auto c = covering_number(x, all, r, CoverMode::exact).count;
      CHECK(c <= prev);
      prev = c;
      CHECK(covering_number(x, part, r, CoverMode::exact).count <= c);
    }
  }
}

TEST_CASE("max_separated_set is separated and maximal") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 40; ++t) {
    const auto x = oracle::random_plane_space(12, rng, 8);
    const double r = 1.0 + static_cast<double>(rng() % 30) / 10.0;
    const auto net = max_separated_set(x, SubsetView::all(x), r);
    for (std::size_t a = 0; a < net.size(); ++a)
      for (std::size_t b = a + 1; b < net.size(); ++b) CHECK(net.distance(a, b) >= r * (1 - 1e-9));
    for (std::size_t v = 0; v < x.size(); ++v) {
      bool near = false;
      for (auto u : net.indices()) near = near || x(u, v) < r * (1 - 1e-9) || u == v;
      CHECK(near);
    }
  }
}

TEST_CASE("doubling constant of simple spaces") {
  const auto line = arithmetic_progression(16);
  const auto d = doubling_constant_empirical(line);
  CHECK(d.constant >= 2);
  CHECK(d.constant <= 3);
  CHECK(d.exact);
  CHECK(d.balls_examined > 0);
  const auto grid = sup_grid(5);
  CHECK(doubling_constant_empirical(grid).constant >= 4);
}

TEST_CASE("greedy is deterministic") {
  const auto x = sup_grid(8);
  const auto a = covering_number(x, SubsetView::all(x), 1.0, CoverMode::greedy);
  const auto b = covering_number(x, SubsetView::all(x), 1.0, CoverMode::greedy);
  CHECK(to_json(a) == to_json(b));
  CHECK(a.count == 16);
}
