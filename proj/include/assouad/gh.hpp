#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "assouad/metric_space.hpp"
#include "assouad/report.hpp"

namespace assouad {

/// A relation between the points of X and Y that covers both sides.
/// `pairs` is sorted and duplicate-free.
struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double distortion = 0.0;
};

enum class GhKind { exact, interval };
const char* to_string(GhKind k);

/// Gromov-Hausdorff distance of finite spaces, computed as half the least
/// distortion over correspondences. For interval results `value` is the
/// upper bound.
struct GhResult {
  double value = 0.0;
  GhKind kind = GhKind::exact;
  double lower = 0.0;
  double upper = 0.0;
  Correspondence witness;
};

/// Maps f: X -> Y and g: Y -> X forming an epsilon-approximation.
struct ApproximationPair {
  std::vector<std::size_t> f;
  std::vector<std::size_t> g;
  double epsilon = 0.0;
};

struct GhOptions {
  std::size_t exact_limit = 8;
  double tol = kDefaultTolMetric;
  int max_improvement_passes = 50;
};

/// Validates surjectivity (NotSurjective) and computes the distortion.
Correspondence make_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   std::vector<std::pair<std::size_t, std::size_t>> pairs);

/// Max over pairs of pairs (x,y), (x',y') in R of |d(x,x') - d(y,y')|.
double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Branch and bound over correspondences. Throws ExactLimitExceeded when
/// either side has more than `exact_limit` points.
GhResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  const GhOptions& options = {});

/// Certified interval: lower bounds from diameters and distance sets, upper
/// bound from a greedily built correspondence.
GhResult gh_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                   const GhOptions& options = {});

/// Exact when both sides are within the exact limit, interval otherwise.
GhResult gh_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                     const GhOptions& options = {});

/// Best certified lower bound on the GH distance used by gh_bounds.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// f(x) = first partner of x in R, g(y) = first partner of y; epsilon is
/// distortion(R) + tol. All three approximation conditions are checked and
/// VerificationFailed names the first violation.
ApproximationPair extract_approximation(const Correspondence& r, const FiniteMetricSpace& x,
                                        const FiniteMetricSpace& y, double tol = kDefaultTolMetric);

report::Json to_json(const Correspondence& c);
report::Json to_json(const GhResult& r);
report::Json to_json(const ApproximationPair& a);

}  // namespace assouad
