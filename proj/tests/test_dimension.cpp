#include <doctest.h>

#include <cmath>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/dimension.hpp"
#include "assouad/errors.hpp"
#include "oracles.hpp"

using namespace assouad;

TEST_CASE("window defaults and validation") {
  const auto x = arithmetic_progression(10);
  const auto w = resolve_window(x, {});
  CHECK(w.r_min == 2.0);
  CHECK(w.r_max == 4.5);
  DimensionParams bad;
  bad.rho_min = 1.0;
  CHECK_THROWS_AS(resolve_window(x, bad), InvalidArgument);
  CHECK_THROWS_AS(assouad_estimate_subsets(arithmetic_progression(1)), NoEligibleSubset);
}

TEST_CASE("dyadic grid is anchored at r_min") {
  CHECK(dyadic_grid(1.0, 9.0) == std::vector<double>{1, 2, 4, 8});
  CHECK(dyadic_grid(3.0, 3.0) == std::vector<double>{3});
  CHECK(dyadic_grid(0.0, 3.0).empty());
}

TEST_CASE("short windows have no eligible ball and scale pair") {
  CHECK_THROWS_AS(assouad_estimate_covering(sup_grid(10)), NoEligibleScalePair);
}

TEST_CASE("two-point spaces have no eligible subset") {
  const auto x = arithmetic_progression(2);
  CHECK_THROWS_AS(assouad_estimate_subsets(x), NoEligibleSubset);
  CHECK_THROWS_AS(assouad_estimate_covering(x), NoEligibleScalePair);
}

TEST_CASE("every diagnostic point reaches rho_min") {
  for (const auto& x : {cantor_sample(6), sup_grid(12), arithmetic_progression(40)}) {
    for (double rho : {4.0, 6.0}) {
      DimensionParams p;
      p.rho_min = rho;
      const auto e = assouad_estimate_subsets(x, p);
      for (const auto& q : e.points) CHECK(q.log_ratio >= std::log(rho) - 1e-9);
      CHECK(e.beta_hat >= 0.0);
      CHECK(e.window.rho_min == rho);
      try {
        const auto c = assouad_estimate_covering(x, p);
        for (const auto& q : c.points) CHECK(q.log_ratio >= std::log(rho) - 1e-9);
      } catch (const NoEligibleScalePair&) {
        // short windows leave no ball radius rho_min octaves above r_min
      }
    }
  }
}

TEST_CASE("sample targets") {
  const double cantor = std::log(2.0) / std::log(3.0);
  CHECK(std::abs(assouad_estimate_subsets(cantor_sample(8)).beta_hat - cantor) <= 0.05);
  const auto ap = assouad_estimate_subsets(arithmetic_progression(64)).beta_hat;
  CHECK(ap >= 0.9);
  CHECK(ap <= 1.1);
}

TEST_CASE("property: estimates are scale invariant") {
  for (const auto& x : {cantor_sample(6), sup_grid(20), arithmetic_progression(33)}) {
    const auto a = assouad_estimate_subsets(x), c = assouad_estimate_covering(x);
    const auto l = lower_assouad_estimate(x);
    // powers of two rescale every distance exactly
    for (double h : {0.25, 8.0}) {
      const auto y = scale(x, h);
      CHECK(assouad_estimate_subsets(y).beta_hat == a.beta_hat);
      CHECK(assouad_estimate_covering(y).beta_hat == c.beta_hat);
      CHECK(lower_assouad_estimate(y).beta_hat == l.beta_hat);
    }
    for (double h : {5.0, 0.3}) {
      const auto y = scale(x, h);
      CHECK(assouad_estimate_subsets(y).beta_hat == doctest::Approx(a.beta_hat).epsilon(1e-12));
      CHECK(assouad_estimate_covering(y).beta_hat == doctest::Approx(c.beta_hat).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: lower estimate never exceeds the upper one") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_plane_space(20 + rng() % 20, rng, 12);
    try {
      const auto u = assouad_estimate_subsets(x), l = lower_assouad_estimate(x);
      CHECK(l.beta_hat <= u.beta_hat);
      CHECK(l.lower);
      CHECK_FALSE(u.lower);
    } catch (const NoEligibleSubset&) {
    }
  }
}

TEST_CASE("property: raising rho_min never raises the extremal exponent") {
  for (const auto& x : {cantor_sample(6), sup_grid(12), arithmetic_progression(50)}) {
    double prev = kInfinity;
    for (double rho : {4.0, 5.0, 8.0, 12.0}) {
      DimensionParams p;
      p.rho_min = rho;
      try {
        const auto e = assouad_estimate_subsets(x, p);
        CHECK(e.extremal_beta <= prev);
        prev = e.extremal_beta;
      } catch (const NoEligibleSubset&) {
      }
    }
  }
}

TEST_CASE("constant_C certifies every diagnostic point") {
  const auto e = assouad_estimate_subsets(cantor_sample(7));
  for (const auto& q : e.points)
    CHECK(std::exp(q.log_count) <= e.constant_C * std::exp(e.beta_hat * q.log_ratio) * (1 + 1e-9));
  const auto l = lower_assouad_estimate(cantor_sample(7));
  for (const auto& q : l.points)
    CHECK(std::exp(q.log_count) >= l.constant_C * std::exp(l.beta_hat * q.log_ratio) * (1 - 1e-9));
}

TEST_CASE("random subset augmentation is seeded") {
  DimensionParams p;
  p.random_subsets = 200;
  p.seed = 9;
  const auto x = sup_grid(10);
  const auto a = assouad_estimate_subsets(x, p), b = assouad_estimate_subsets(x, p);
  CHECK(to_json(a) == to_json(b));
  CHECK(a.samples > assouad_estimate_subsets(x).samples);
}

TEST_CASE("structured output carries the window and the empirical flag") {
  const auto j = to_json(assouad_estimate_subsets(cantor_sample(5)));
  CHECK(j["empirical"] == true);
  CHECK(j["method"] == "subset-extremal");
  CHECK(j["window"]["rho_min"] == 4.0);
  CHECK(j["points"].is_array());
}
