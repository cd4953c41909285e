#include <doctest.h>

#include <cmath>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/errors.hpp"
#include "oracles.hpp"

using namespace assouad;

namespace {

FiniteMetricSpace point() { return validate_metric(std::vector<double>{0.0}, 1); }

}  // namespace

TEST_CASE("cantor samples") {
  const auto c0 = cantor_sample(0);
  CHECK(c0.size() == 2);
  CHECK(c0(0, 1) == 1.0);
  const auto c1 = cantor_sample(1);
  CHECK(c1.size() == 4);
  CHECK(c1(0, 1) == doctest::Approx(1.0 / 3));
  CHECK(c1(0, 2) == doctest::Approx(2.0 / 3));
  const auto c2 = cantor_sample(2);
  CHECK(c2.size() == 8);
  CHECK(separation(c2) == doctest::Approx(1.0 / 9));
  CHECK_THROWS_AS(cantor_sample(15), LevelTooLarge);
  CHECK_THROWS_AS(cantor_sample(-1), InvalidArgument);
}

TEST_CASE("grids and progressions") {
  const auto g = sup_grid(3, 0.5);
  CHECK(g.size() == 9);
  CHECK(diameter(g) == 1.0);
  CHECK(separation(g) == 0.5);
  const auto a = arithmetic_progression(4, 2.0);
  CHECK(a(0, 3) == 6.0);
  CHECK_THROWS_AS(line_points({0.0, 1.0, 1.0}), ZeroOffDiagonal);
}

TEST_CASE("graph length spaces") {
  const auto p = graph_length_space(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(p(0, 2) == 2.0);
  const auto t = graph_length_space(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}});
  CHECK(t(0, 2) == 2.0);
  CHECK_THROWS_AS(graph_length_space(3, {{0, 1, 1.0}}), DisconnectedGraph);
  CHECK_THROWS_AS(graph_length_space(2, {{0, 1, -1.0}}), InvalidArgument);
  const auto path = path_graph(0.0, 2.0, 8);
  CHECK(path.size() == 9);
  CHECK(path(0, 8) == doctest::Approx(2.0));
}

TEST_CASE("telescope of two singletons") {
  TelescopeSpec spec;
  spec.components = {point(), point()};
  const auto t = telescope(spec);
  REQUIRE(t.size() == 3);
  CHECK(t.label(0) == "inf");
  CHECK(t(1, 2) == 1.0);
  CHECK(t(0, 1) == 1.0);
  CHECK(t(0, 2) == 0.5);
}

TEST_CASE("telescope metric table") {
  TelescopeSpec spec;
  spec.components = {arithmetic_progression(2), arithmetic_progression(3), cantor_sample(1),
                     sup_grid(2)};
  const auto t = telescope(spec);
  const auto x1 = telescope_index(spec, 1, 0), x3 = telescope_index(spec, 3, 2);
  CHECK(t(x1, x3) == 0.5);
  CHECK(t(0, telescope_index(spec, 2, 1)) == 0.25);
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t p = 0; p < spec.components[i].size(); ++p) idx.push_back(telescope_index(spec, i, p));
    CHECK(diameter(SubsetView(t, idx)) <= std::ldexp(1.0, -static_cast<int>(i)));
  }
}

TEST_CASE("telescope without rescaling checks the diameter bound") {
  TelescopeSpec spec;
  spec.components = {arithmetic_progression(2), arithmetic_progression(2)};
  spec.rescale = false;
  try {
    telescope(spec);
    FAIL("expected DiameterBoundViolated");
  } catch (const DiameterBoundViolated& e) {
    CHECK(e.index == 1);
  }
  spec.components[1] = scale(arithmetic_progression(2), 0.5);
  CHECK_NOTHROW(telescope(spec));
}

TEST_CASE("property: telescope balls around infinity are tails") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    TelescopeSpec spec;
    const std::size_t k = 1 + rng() % 6;
    for (std::size_t i = 0; i < k; ++i) spec.components.push_back(oracle::random_small_space(5, rng));
    const auto tel = telescope(spec);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> want{0};
      for (std::size_t c = i; c < k; ++c)
        for (std::size_t p = 0; p < spec.components[c].size(); ++p) want.push_back(telescope_index(spec, c, p));
      std::sort(want.begin(), want.end());
      CHECK(closed_ball(tel, 0, std::ldexp(1.0, -static_cast<int>(i))).indices() == want);
    }
  }
}

TEST_CASE("factorial rescale schedule") {
  const auto r = factorial_rescale_schedule({1.0, 1.0, 0.5});
  CHECK(r == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(factorial_rescale_schedule(std::vector<double>(22, 1.0)), InvalidArgument);
}

TEST_CASE("classify_F buckets") {
  const auto q = line_points({0.0, 1.0});
  CHECK(classify_F(SubsetView::all(q), 0) == std::pair<std::uint64_t, std::int64_t>{0, 0});
  const auto tri = validate_metric(std::vector<double>{0, .5, .5, .5, 0, .5, .5, .5, 0}, 3);
  CHECK(classify_F(SubsetView::all(tri), 0) == std::pair<std::uint64_t, std::int64_t>{0, 1});
  const auto big = scale(tri, 2.0);
  CHECK(classify_F(SubsetView::all(big), 0).second == 0);
  CHECK(classify_F(SubsetView::all(big), 0).first == 0);
  CHECK_THROWS_AS(classify_F(SubsetView(q, {1}), 0), BasePointMissing);
  CHECK_THROWS_AS(classify_F(SubsetView(q, {0}), 0), SingletonSubset);
}

TEST_CASE("property: scaling shifts the diameter bucket by one") {
  const auto spec = default_asymptotic_spec(4);
  for (std::size_t s = 0; s < spec.dictionary.size(); s += 37) {
    const SubsetView f(spec.ambient, spec.dictionary[s]);
    const auto big = scale(spec.ambient, 2.0);
    const auto [j, k] = classify_F(f, 0);
    const auto [j2, k2] = classify_F(SubsetView(big, spec.dictionary[s]), 0);
    CHECK(j2 == j);
    CHECK(k2 == k - 1);
  }
}

TEST_CASE("asymptotic example metric") {
  const auto spec = default_asymptotic_spec(6);
  const auto blocks = asymptotic_blocks(spec);
  const auto x = asymptotic_example(spec);
  const auto block_of = asymptotic_block_of(spec);
  REQUIRE(block_of.size() == x.size());
  CHECK(block_of[0] == -1);
  for (std::size_t i = 0; i < blocks.blocks.size(); ++i) {
    CHECK(blocks.blocks[i].contains(spec.base));
    CHECK(blocks.weights[i] ==
          doctest::Approx(std::ldexp(1.0, static_cast<int>(i * i)) / separation(blocks.blocks[i])));
    const auto [j, k] = classify_F(blocks.blocks[i], spec.base);
    CHECK(j == blocks.codes[i].y);
    CHECK(k == blocks.codes[i].z);
  }
  // G_0 realizes bucket (0, 0): its separation becomes 1 after weighting
  std::vector<std::size_t> g0{0};
  for (std::size_t p = 1; p < x.size(); ++p)
    if (block_of[p] == 0) g0.push_back(p);
  CHECK(separation(SubsetView(x, g0)) == doctest::Approx(1.0));
  // cross-block distances pass through the base point
  for (std::size_t p = 1; p < x.size(); ++p)
    for (std::size_t r = 1; r < x.size(); ++r)
      if (block_of[p] != block_of[r]) CHECK(x(p, r) == doctest::Approx(x(p, 0) + x(0, r)).epsilon(1e-12));
}

TEST_CASE("asymptotic truncation limits and unrealizable buckets") {
  CHECK_THROWS_AS(asymptotic_blocks(default_asymptotic_spec(0)), TruncationTooSmall);
  CHECK_THROWS_AS(asymptotic_blocks(default_asymptotic_spec(32)), TruncationTooLarge);
  CHECK_NOTHROW(asymptotic_example(default_asymptotic_spec(31)));
  AsymptoticExampleSpec tiny;
  tiny.ambient = line_points({0.0, 1.0});
  tiny.dictionary = {{0, 1}};
  tiny.truncation = 3;
  CHECK_THROWS_AS(asymptotic_blocks(tiny), BucketUnrealizable);
}
