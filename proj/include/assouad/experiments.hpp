#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "assouad/constructions.hpp"
#include "assouad/dimension.hpp"
#include "assouad/gh.hpp"
#include "assouad/metric_space.hpp"
#include "assouad/report.hpp"

namespace assouad {

/// Subsets A_i of a base space with scale factors u_i.
struct ScaledSubsetSequence {
  FiniteMetricSpace base;
  std::vector<std::pair<SubsetView, double>> items;
};

/// u_i A_i as a standalone space.
FiniteMetricSpace scaled_item(const ScaledSubsetSequence& seq, std::size_t i);

struct StepRecord {
  std::size_t index = 0;
  std::string label;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = true;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  std::vector<StepRecord> steps;
  bool verdict = true;  // every step passes
  double runtime_seconds = 0.0;
  std::vector<std::string> notes;
};

/// Sets `verdict` from the steps.
void finalize(ExperimentReport& r);

/// Structured form. Runtime is left out so that reports of identical runs
/// are byte-identical.
report::Json to_json(const ExperimentReport& r);
std::string report_table(const ExperimentReport& r);

struct ConvergenceOptions {
  double convergence_tol = 1e-2;
  std::size_t burn_in = 3;
  double monotone_tol = 1e-9;
  GhOptions gh;
};

/// d_GH(u_i A_i, P) per step (upper end of the interval when the spaces are
/// too large for the exact solver). Steps after the burn-in must not
/// increase, and the last one must be within convergence_tol.
ExperimentReport pseudo_cone_convergence(const ScaledSubsetSequence& seq, const FiniteMetricSpace& p,
                                         const ConvergenceOptions& options = {});

struct InequalityOptions {
  double slack = 0.1;
  DimensionMethod upper_method = DimensionMethod::subset_extremal;
  DimensionParams params;  // the same window rule is applied to X and P
  ConvergenceOptions convergence;
};

/// Compares window-matched empirical estimates: upper(P) <= upper(X) + slack
/// and lower(X) <= lower(P) + slack. Runs the convergence check first (or
/// takes its report) and throws PrerequisiteNotMet when it failed.
ExperimentReport dimension_inequality_check(const FiniteMetricSpace& x, const ScaledSubsetSequence& seq,
                                            const FiniteMetricSpace& p,
                                            const InequalityOptions& options = {},
                                            const ExperimentReport* convergence = nullptr);

/// For each sample A_i (i = first_index, ...): p must lie in A_i, and every
/// ball B(p, k 2^-i) with k <= 4^i must be within 2^-i of its trace on A_i
/// (HypothesisViolated(i, k) otherwise). The step records
/// d_H(B(p, R; K), B(p, R; A_i)) against 2^(1-i) + mesh.
ExperimentReport ball_convergence_check(const FiniteMetricSpace& k, std::size_t p,
                                        const std::vector<SubsetView>& samples, double r,
                                        double mesh, std::size_t first_index = 0);

struct GraphSample {
  FiniteMetricSpace space;
  double mesh = 0.0;  // longest edge
};

/// Connected graph: a random spanning tree plus extra edges, lengths in
/// [0.1, 1).
GraphSample random_connected_graph(std::size_t vertices, std::size_t extra_edges, std::uint64_t seed);

/// d_H(B(p, r), B(p, R)) <= |r - R| + mesh for a ladder of radii around
/// vertex 0 of each graph.
ExperimentReport concentric_ball_check(const std::vector<GraphSample>& graphs);

/// Numeric checks on the asymptotic example: the separation ratio of
/// consecutive blocks stays below 16, and for every i with
/// 2^(i+1) diam(G_i) > R the rescaled ball B_i(R) misses later blocks and
/// lies within 32 2^-i of its block part S_i(R). Throws TruncationTooSmall
/// below two blocks.
ExperimentReport telescope_lemma_checks(const AsymptoticExampleSpec& spec, double r);

/// Greedy chain 0 = j_0 < j_1 < ... where consecutive GH upper bounds are
/// at most eps.
std::vector<std::size_t> precompact_subsequence(const std::vector<FiniteMetricSpace>& spaces, double eps,
                                                const GhOptions& options = {});

// ---------------------------------------------------------------------------
// Built-in scenarios

struct Scenario {
  FiniteMetricSpace x;
  ScaledSubsetSequence seq;
  FiniteMetricSpace p;
  double slack = 0.1;
};

/// Cantor level 10; A_i the leftmost piece of depth i (i = 1..6) scaled by
/// 3^i; P the level-4 sample.
Scenario cantor_scenario();

/// 32 x 32 sup grid; A_i its four 16 x 16 quadrants scaled by 1/15; P the
/// 16 x 16 grid of spacing 1/15.
Scenario grid_scenario();

/// Path over [0, 2] with mesh 2^-8 and dyadic subsamples A_i of step
/// 2^-i, i = 0..6, based at 0.
ExperimentReport ball_convergence_scenario(double r = 1.5);

/// `count` seeded connected graphs with 5..30 vertices and n/2 extra edges.
std::vector<GraphSample> suite_graphs(std::uint64_t seed, std::size_t count = 50);

/// Convergence report, then the inequality check at the scenario's slack
/// (reported as failed when convergence fails). Names are prefixed.
std::vector<ExperimentReport> scenario_reports(const std::string& name, const Scenario& s);

/// Greedy GH chain (eps 2e-2) through the rescaled Cantor pieces.
ExperimentReport precompact_scenario();

/// The whole suite in a fixed order. Output depends only on `seed`.
std::vector<ExperimentReport> run_suite(std::uint64_t seed = 0);

}  // namespace assouad
