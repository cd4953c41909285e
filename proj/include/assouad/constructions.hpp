#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "assouad/metric_space.hpp"

namespace assouad {

// ---------------------------------------------------------------------------
// Sample spaces

/// The 2^(level+1) endpoints of the level-`level` middle-third intervals of
/// [0, 1]. Throws LevelTooLarge above 14.
FiniteMetricSpace cantor_sample(int level);

/// Points of the real line with |a - b| distances. Points must be distinct.
FiniteMetricSpace line_points(const std::vector<double>& points,
                              std::vector<std::string> labels = {});

/// 0, step, 2 step, ..., (n - 1) step.
FiniteMetricSpace arithmetic_progression(std::size_t n, double step = 1.0);

/// The side x side integer grid under the max-coordinate metric.
FiniteMetricSpace sup_grid(std::size_t side, double spacing = 1.0);

struct Edge {
  std::size_t u = 0, v = 0;
  double length = 1.0;
};

/// Shortest-path metric of a connected graph with positive edge lengths.
/// Throws DisconnectedGraph.
FiniteMetricSpace graph_length_space(std::size_t vertices, const std::vector<Edge>& edges,
                                     std::vector<std::string> labels = {});

/// Path graph on [a, b] with `segments` equal edges.
FiniteMetricSpace path_graph(double a, double b, std::size_t segments);

// ---------------------------------------------------------------------------
// Telescope spaces

struct TelescopeSpec {
  std::vector<FiniteMetricSpace> components;
  bool rescale = true;
  std::string infinity_label = "inf";
};

/// Point 0 is the extra point at infinity, followed by the points of
/// X_0, X_1, ... in order (labels "X<i>:<label>"). Distances: inside X_i
/// the component metric; between X_i and X_j the larger of 2^-i, 2^-j; from
/// infinity to X_i exactly 2^-i. With `rescale`, each X_i is scaled to
/// diameter at most 2^-i first; otherwise a larger component throws
/// DiameterBoundViolated(i).
FiniteMetricSpace telescope(const TelescopeSpec& spec);

/// Index in the telescope output of point p of component i.
std::size_t telescope_index(const TelescopeSpec& spec, std::size_t component, std::size_t point);

/// r_i = (i + 1)! * diameters[i]. Throws InvalidArgument beyond i = 20.
std::vector<double> factorial_rescale_schedule(const std::vector<double>& diameters);

// ---------------------------------------------------------------------------
// Index maps

struct IndexTriple {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::int64_t z = 0;
  friend bool operator==(const IndexTriple&, const IndexTriple&) = default;
};

/// min over k of |n - k^2|.
std::uint64_t index_map_H(std::uint64_t n);

/// Walk over N x N x Z: for s = 0, 1, ... it sweeps the box
/// [0,s] x [0,s] x [-s,s] in boustrophedon order starting at (0,0,-s), then
/// walks back to (0,0,-(s+1)). Every step changes one coordinate by one.
/// The walk is generated on demand and cached; safe to share across threads.
class IndexWalk {
 public:
  IndexTriple operator()(std::uint64_t n);

 private:
  void extend_to(std::uint64_t n);
  std::mutex mutex_;
  std::vector<IndexTriple> steps_;
  std::int64_t next_shell_ = 0;
};

IndexTriple index_map_A(std::uint64_t n);
/// A(H(n)).
IndexTriple index_map_C(std::uint64_t n);

// ---------------------------------------------------------------------------
// Asymptotic-cone example space

/// Bucket (j, k) of a finite set F containing the base point:
/// 2^-k <= diam(F) < 2^(1-k) and 2^-j <= sep(F)/diam(F) < 2^(1-j).
/// Throws BasePointMissing or SingletonSubset.
std::pair<std::uint64_t, std::int64_t> classify_F(const SubsetView& f, std::size_t base);

struct AsymptoticExampleSpec {
  FiniteMetricSpace ambient;
  std::size_t base = 0;
  std::vector<std::vector<std::size_t>> dictionary;  // subsets of ambient containing base
  std::size_t truncation = 8;
};

/// The blocks and weights picked for each i < truncation.
struct AsymptoticBlocks {
  std::vector<SubsetView> blocks;  // G_i in the ambient space
  std::vector<double> weights;     // a_i = 2^(i^2) / sep(G_i)
  std::vector<IndexTriple> codes;  // C(i)
};

/// G_i is the (x mod count)-th dictionary set in bucket (j, k), where
/// C(i) = (x, j, k). Throws BucketUnrealizable(i) or TruncationTooLarge
/// (weights overflow doubles above 31 blocks).
AsymptoticBlocks asymptotic_blocks(const AsymptoticExampleSpec& spec);

/// Point 0 is the base point; then the points of G_0 \ {base},
/// G_1 \ {base}, ... Inside block i distances are a_i d(x, y); across
/// blocks a_i d(x, base) + a_j d(base, y). The result is validated with a
/// tolerance proportional to its largest entry.
FiniteMetricSpace asymptotic_example(const AsymptoticExampleSpec& spec);

/// For each output point, the block it belongs to (-1 for the base point).
std::vector<long> asymptotic_block_of(const AsymptoticExampleSpec& spec);

/// Default ambient: 0 and m/16 for m = 1..64 on the line, base 0, and every
/// subset with 2 or 3 points containing the base.
AsymptoticExampleSpec default_asymptotic_spec(std::size_t truncation);

}  // namespace assouad
