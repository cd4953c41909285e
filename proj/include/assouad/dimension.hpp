#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "assouad/metric_space.hpp"
#include "assouad/report.hpp"

namespace assouad {

// Empirical Assouad-type exponents of a finite sample.
//
// A finite space has dimension 0 in the strict sense; these estimators look
// at a window of scales [r_min, r_max] and fit how cardinalities (or
// covering counts) grow with the scale ratio inside that window. Every
// estimate carries its window.
//
// Each candidate contributes a diagnostic point (log ratio, log count).
// Points are grouped into octaves of the ratio; the estimate is the
// least-squares slope through the largest count of each octave (smallest
// for the lower estimate). `extremal_beta` is the single worst exponent
// log count / log ratio, i.e. the fit with the constant pinned to 1.

enum class DimensionMethod { subset_extremal, covering_fit };
const char* to_string(DimensionMethod m);

struct DimensionParams {
  double rho_min = 4.0;
  double r_min = 0.0;  // <= 0: twice the smallest positive distance
  double r_max = 0.0;  // <= 0: half the diameter
  std::size_t random_subsets = 0;  // extra seeded random subsets of balls
  std::uint64_t seed = 0;
  double rel_tol = 1e-9;
};

struct ScaleWindow {
  double rho_min = 4.0;
  double r_min = 0.0;
  double r_max = 0.0;
};

struct DiagnosticPoint {
  double log_ratio = 0.0;
  double log_count = 0.0;
  friend bool operator==(const DiagnosticPoint&, const DiagnosticPoint&) = default;
};

struct DimensionEstimate {
  double beta_hat = 0.0;
  double constant_C = 1.0;
  DimensionMethod method = DimensionMethod::subset_extremal;
  bool lower = false;  // lower Assouad estimate
  ScaleWindow window;
  std::size_t samples = 0;  // eligible candidates evaluated
  std::vector<DiagnosticPoint> points;
  std::vector<DiagnosticPoint> envelope;
  double extremal_beta = 0.0;
  double lsq_slope = 0.0;  // slope through all points
  bool capped = false;     // lower estimate clipped to the upper one
};

ScaleWindow resolve_window(const FiniteMetricSpace& x, const DimensionParams& params);

/// r_min * 2^k for k = 0, 1, ... while within r_max.
std::vector<double> dyadic_grid(double r_min, double r_max);

/// Pool of r-nets of X intersected with balls, over the dyadic grid.
/// Throws NoEligibleSubset when no member reaches ratio rho_min.
DimensionEstimate assouad_estimate_subsets(const FiniteMetricSpace& x,
                                           const DimensionParams& params = {});

/// Greedy covering counts of balls B(x, R) at scales r <= R / rho_min.
/// Throws NoEligibleScalePair.
DimensionEstimate assouad_estimate_covering(const FiniteMetricSpace& x,
                                            const DimensionParams& params = {});

/// Same pool as the subset estimator, lower envelope. Never exceeds the
/// subset estimate on the same input; `capped` is set when clipping applied.
DimensionEstimate lower_assouad_estimate(const FiniteMetricSpace& x,
                                         const DimensionParams& params = {});

/// Diagnostic points of the subset pool (deduplicated, sorted).
std::vector<DiagnosticPoint> subset_pool(const FiniteMetricSpace& x, const DimensionParams& params,
                                         std::size_t* samples = nullptr);
std::vector<DiagnosticPoint> covering_pool(const FiniteMetricSpace& x, const DimensionParams& params,
                                           std::size_t* samples = nullptr);

report::Json to_json(const DimensionEstimate& e);

}  // namespace assouad
