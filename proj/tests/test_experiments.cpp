#include <doctest.h>

#include <cmath>

#include "assouad/constructions.hpp"
#include "assouad/errors.hpp"
#include "assouad/experiments.hpp"

using namespace assouad;

namespace {

// A_i = the first 2^i + 1 points of a progression scaled to [0, 1].
ScaledSubsetSequence shrinking_progressions(std::size_t steps) {
  ScaledSubsetSequence seq;
  seq.base = arithmetic_progression(std::size_t{1} << steps | 1);
  for (std::size_t i = 1; i <= steps; ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v <= (std::size_t{1} << i); ++v) idx.push_back(v);
    seq.items.emplace_back(SubsetView(seq.base, idx), std::ldexp(1.0, -static_cast<int>(i)));
  }
  return seq;
}

}  // namespace

TEST_CASE("scaled items are rescaled subspaces") {
  const auto seq = shrinking_progressions(3);
  const auto y = scaled_item(seq, 2);
  CHECK(y.size() == 9);
  CHECK(diameter(y) == 1.0);
}

TEST_CASE("convergence passes when the last step matches P and fails otherwise") {
  const auto seq = shrinking_progressions(3);
  const auto good = pseudo_cone_convergence(seq, scaled_item(seq, 2));
  CHECK(good.verdict);
  CHECK(good.steps.back().measured == 0.0);
  const auto bad = pseudo_cone_convergence(seq, arithmetic_progression(2, 5.0));
  CHECK_FALSE(bad.verdict);
  CHECK_THROWS_AS(dimension_inequality_check(seq.base, seq, arithmetic_progression(2, 5.0)),
                  PrerequisiteNotMet);
}

TEST_CASE("ball convergence flags violated hypotheses") {
  const auto k = path_graph(0.0, 2.0, 64);
  // a single far sample cannot approximate balls around 0
  const std::vector<SubsetView> samples{SubsetView(k, {0, 64})};
  CHECK_THROWS_AS(ball_convergence_check(k, 0, samples, 1.5, 2.0 / 64, 3), HypothesisViolated);
  const auto rep = ball_convergence_scenario(1.5);
  CHECK(rep.verdict);
  CHECK(rep.steps.size() == 7);
}

TEST_CASE("random graphs are connected, seeded, and satisfy the concentric bound") {
  const auto a = random_connected_graph(12, 6, 77), b = random_connected_graph(12, 6, 77);
  CHECK(a.space.size() == 12);
  CHECK(a.mesh < 1.0);
  CHECK(a.mesh >= 0.1);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) CHECK(a.space(i, j) == b.space(i, j));
  CHECK(concentric_ball_check({a, random_connected_graph(20, 3, 5)}).verdict);
}

TEST_CASE("asymptotic lemma checks need two blocks") {
  CHECK_THROWS_AS(telescope_lemma_checks(default_asymptotic_spec(1), 1.0), TruncationTooSmall);
  const auto rep = telescope_lemma_checks(default_asymptotic_spec(6), 1.0);
  CHECK(rep.verdict);
}

TEST_CASE("precompact chain") {
  std::vector<FiniteMetricSpace> spaces{arithmetic_progression(3), arithmetic_progression(3, 1.001),
                                        arithmetic_progression(3, 3.0), arithmetic_progression(3, 1.002)};
  CHECK(precompact_subsequence(spaces, 0.01) == std::vector<std::size_t>{0, 1, 3});
  CHECK(precompact_subsequence({}, 0.01).empty());
}

TEST_CASE("reports serialize without runtimes") {
  auto rep = ball_convergence_scenario(1.0);
  rep.runtime_seconds = 123.0;
  const auto j = to_json(rep);
  CHECK_FALSE(j.contains("runtime_seconds"));
  CHECK(j["verdict"] == "pass");
  CHECK(report_table(rep).find("ball-convergence") != std::string::npos);
}
