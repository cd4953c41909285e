#include <doctest.h>

#include <random>

#include "assouad/constructions.hpp"
#include "assouad/errors.hpp"
#include "assouad/gh.hpp"
#include "oracles.hpp"

using namespace assouad;

namespace {

FiniteMetricSpace single_point() { return validate_metric(std::vector<double>{0.0}, 1); }

}  // namespace

TEST_CASE("one point against a space is half its diameter") {
  const auto x = arithmetic_progression(5);
  const auto r = gh_exact(single_point(), x);
  CHECK(r.value == 2.0);
  CHECK(r.kind == GhKind::exact);
  CHECK(r.witness.distortion == 4.0);
}

TEST_CASE("isometric spaces are at distance zero") {
  const auto x = sup_grid(2);
  const std::vector<std::size_t> perm{3, 1, 0, 2};
  std::vector<double> d(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d[i * 4 + j] = x(perm[i], perm[j]);
  const auto y = validate_metric(d, 4);
  CHECK(gh_exact(x, y).value == 0.0);
}

TEST_CASE("make_correspondence validates surjectivity") {
  const auto x = arithmetic_progression(2), y = arithmetic_progression(3);
  CHECK_THROWS_AS(make_correspondence(x, y, {{0, 0}, {0, 1}, {0, 2}}), NotSurjective);
  CHECK_THROWS_AS(make_correspondence(x, y, {{0, 0}, {1, 1}}), NotSurjective);
  const auto r = make_correspondence(x, y, {{1, 2}, {0, 0}, {1, 1}, {0, 0}});
  CHECK(r.pairs.size() == 3);
  CHECK(r.pairs.front() == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(r.distortion == 1.0);
}

TEST_CASE("exact solver refuses oversized inputs") {
  const auto x = arithmetic_progression(9);
  CHECK_THROWS_AS(gh_exact(x, x), ExactLimitExceeded);
  CHECK(gh_distance(x, x).kind == GhKind::interval);
}

TEST_CASE("oracle: branch and bound equals enumeration on small spaces") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const auto x = oracle::random_small_space(4, rng), y = oracle::random_small_space(4, rng);
    const auto r = gh_exact(x, y);
    CHECK(r.value == doctest::Approx(oracle::gh_by_enumeration(x, y)).epsilon(1e-12));
    CHECK(distortion(r.witness, x, y) / 2.0 == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("property: exact GH is symmetric, scales, and respects the diameter bound") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 60; ++t) {
    const auto x = oracle::random_small_space(6, rng), y = oracle::random_small_space(6, rng);
    const double v = gh_exact(x, y).value;
    CHECK(gh_exact(y, x).value == doctest::Approx(v).epsilon(1e-12));
    CHECK(std::abs(diameter(x) - diameter(y)) <= 2 * v + 1e-12);
    for (double h : {0.5, 2.0, 10.0})
      CHECK(gh_exact(scale(x, h), scale(y, h)).value == doctest::Approx(h * v).epsilon(1e-9));
    CHECK(gh_exact(x, x).value == 0.0);
  }
}

TEST_CASE("property: exact GH satisfies the triangle inequality") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const auto x = oracle::random_small_space(5, rng), y = oracle::random_small_space(5, rng),
               z = oracle::random_small_space(5, rng);
    CHECK(gh_exact(x, z).value <= gh_exact(x, y).value + gh_exact(y, z).value + 1e-12);
  }
}

TEST_CASE("property: bounds bracket the exact value") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 80; ++t) {
    const auto x = oracle::random_small_space(7, rng), y = oracle::random_small_space(7, rng);
    const auto e = gh_exact(x, y);
    const auto b = gh_bounds(x, y);
    CHECK(b.kind == GhKind::interval);
    CHECK(b.lower <= e.value + 1e-12);
    CHECK(b.upper >= e.value - 1e-12);
    CHECK(b.value == b.upper);
    CHECK(gh_lower_bound(x, y) <= e.value + 1e-12);
    CHECK(distortion(b.witness, x, y) / 2.0 == doctest::Approx(b.upper).epsilon(1e-12));
  }
}

TEST_CASE("bounds on larger spaces stay ordered and certify the witness") {
  const auto x = cantor_sample(4), y = scale(cantor_sample(3), 1.1);
  const auto b = gh_bounds(x, y);
  CHECK(b.lower <= b.upper);
  CHECK(b.lower >= std::abs(diameter(x) - diameter(y)) / 2.0 - 1e-12);
  CHECK(distortion(b.witness, x, y) / 2.0 == doctest::Approx(b.upper));
}

TEST_CASE("property: extracted approximations satisfy all three conditions") {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 40; ++t) {
    const auto x = oracle::random_small_space(5, rng), y = oracle::random_small_space(5, rng);
    const auto r = gh_exact(x, y);
    const auto a = extract_approximation(r.witness, x, y);
    CHECK(a.epsilon == doctest::Approx(2 * r.value + kDefaultTolMetric));
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(x(i, a.g[a.f[i]]) < a.epsilon);
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(x(i, j) - y(a.f[i], a.f[j])) < a.epsilon);
    }
  }
}
