#pragma once

#include <cstddef>
#include <vector>

#include "assouad/metric_space.hpp"
#include "assouad/report.hpp"

namespace assouad {

enum class CoverMode { exact, greedy };
enum class Exactness { exact, upper_bound };

const char* to_string(CoverMode m);
const char* to_string(Exactness e);

struct CoverOptions {
  std::size_t exact_cover_limit = 20;
  /// Relative slack on diameter and separation comparisons, so that results
  /// do not flip under rescaling.
  double rel_tol = 1e-9;
};

/// A cover of S by blocks of diameter at most `radius`.
///
/// Blocks are always drawn from S itself; covers using arbitrary bounded
/// subsets of the ambient space can be smaller. `blocks_within_subset`
/// records this restriction in serialized reports.
struct CoverCertificate {
  double radius = 0.0;
  std::vector<SubsetView> blocks;
  std::size_t count = 0;
  Exactness exactness = Exactness::upper_bound;
  bool blocks_within_subset = true;
};

/// Minimum number of diameter-<=r blocks covering S.
///
/// Exact mode solves set cover over the maximal cliques of the threshold
/// graph and throws ExactLimitExceeded above `exact_cover_limit` points.
/// Greedy mode returns an upper bound.
CoverCertificate covering_number(const FiniteMetricSpace& x, const SubsetView& s, double r,
                                 CoverMode mode, const CoverOptions& options = {});

/// Maximal r-separated subset of S, scanning S in index order and keeping a
/// point when it is at distance >= r from everything kept so far.
SubsetView max_separated_set(const FiniteMetricSpace& x, const SubsetView& s, double r,
                             double rel_tol = 1e-9);

struct DoublingEstimate {
  std::size_t constant = 1;
  bool exact = true;  // every ball was solved exactly
  std::size_t witness_center = 0;
  double witness_radius = 0.0;
  std::size_t balls_examined = 0;
};

/// Max over balls S = B(x, R) of the least card(F), F subset of X, with
/// S inside B(F, diam(S)/2). Only balls are examined, so the value is an
/// empirical lower estimate of the doubling constant.
DoublingEstimate doubling_constant_empirical(const FiniteMetricSpace& x,
                                             const CoverOptions& options = {});

report::Json to_json(const CoverCertificate& c);
report::Json to_json(const DoublingEstimate& d);

namespace detail {
/// Greedy partition of `members` (base indices) into diameter-<=r blocks.
/// Each block is grown from an anchor by adding uncovered points in
/// (distance, index) order while the diameter stays within r; the largest
/// block is taken, ties going to the lexicographically smallest index set.
std::vector<std::vector<std::size_t>> greedy_cover_blocks(const FiniteMetricSpace& x,
                                                          const std::vector<std::size_t>& members,
                                                          double r, double rel_tol = 1e-9);
}  // namespace detail

}  // namespace assouad
