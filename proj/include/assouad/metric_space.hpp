#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace assouad {

inline constexpr double kDefaultTolMetric = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A finite metric space: n labelled points and an n x n distance matrix.
///
/// Instances are immutable once built. Copies share the underlying storage,
/// so passing spaces by value is cheap and safe across threads. The only
/// public way to obtain one is `validate_metric`; generators whose output is
/// a metric by construction go through `detail::make_space_unchecked`.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const noexcept { return storage_ ? storage_->n : 0; }
  bool empty() const noexcept { return size() == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return storage_->d[i * storage_->n + j];
  }
  double distance(std::size_t i, std::size_t j) const;

  std::span<const double> row(std::size_t i) const noexcept {
    return {storage_->d.data() + i * storage_->n, storage_->n};
  }
  std::span<const double> matrix() const noexcept {
    return storage_ ? std::span<const double>(storage_->d) : std::span<const double>();
  }

  const std::vector<std::string>& labels() const noexcept { return storage_->labels; }
  const std::string& label(std::size_t i) const { return storage_->labels.at(i); }

  /// True when both handles refer to the same validated instance.
  bool same_instance(const FiniteMetricSpace& other) const noexcept {
    return storage_ == other.storage_;
  }

 private:
  struct Storage {
    std::size_t n = 0;
    std::vector<double> d;
    std::vector<std::string> labels;
  };

  explicit FiniteMetricSpace(std::shared_ptr<const Storage> s) : storage_(std::move(s)) {}

  std::shared_ptr<const Storage> storage_;

  friend FiniteMetricSpace make_space_unchecked_impl(std::vector<double>, std::size_t,
                                                     std::vector<std::string>);
};

namespace detail {
/// Wraps a matrix the caller guarantees to be a metric (row-major, n x n).
/// Empty labels are replaced by "0", "1", ...
FiniteMetricSpace make_space_unchecked(std::vector<double> d, std::size_t n,
                                       std::vector<std::string> labels = {});
}  // namespace detail

/// An ordered set of distinct point indices into a base space.
class SubsetView {
 public:
  SubsetView() = default;
  /// Throws EmptySubset, or InvalidArgument on duplicate / out-of-range indices.
  SubsetView(FiniteMetricSpace base, std::vector<std::size_t> indices);

  static SubsetView all(const FiniteMetricSpace& base);

  std::size_t size() const noexcept { return indices_.size(); }
  const FiniteMetricSpace& base() const noexcept { return base_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }
  /// Distance between the a-th and b-th members.
  double distance(std::size_t a, std::size_t b) const noexcept {
    return base_(indices_[a], indices_[b]);
  }
  bool contains(std::size_t base_index) const;

 private:
  struct Unchecked {};
  SubsetView(FiniteMetricSpace base, std::vector<std::size_t> indices, Unchecked)
      : base_(std::move(base)), indices_(std::move(indices)) {}

  FiniteMetricSpace base_;
  std::vector<std::size_t> indices_;

  friend SubsetView closed_ball(const FiniteMetricSpace&, std::size_t, double);
};

/// Vectors of the Frechet embedding into (R^n, sup-metric).
struct EmbeddedVectors {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> vectors;

  /// Max-coordinate difference between two embedded points.
  double distance(std::size_t i, std::size_t j) const;
};

/// Checks the four metric axioms and returns an immutable space.
///
/// `d` is row-major n x n. Checks run in this order: finiteness, zero
/// diagonal, non-negativity, positive off-diagonal entries, symmetry (within
/// `tol`), triangle inequality (deficit at most `tol`). The first failing
/// check throws with the witnessing indices. Symmetric pairs that agree
/// within `tol` are stored as the upper-triangle value.
FiniteMetricSpace validate_metric(std::vector<double> d, std::size_t n,
                                  std::vector<std::string> labels = {},
                                  double tol = kDefaultTolMetric);
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels = {},
                                  double tol = kDefaultTolMetric);

/// hX: every distance multiplied by h. Throws NonPositiveScale.
FiniteMetricSpace scale(const FiniteMetricSpace& x, double h);

/// The subspace spanned by `s`, as a standalone space (labels carried).
FiniteMetricSpace restrict_to(const SubsetView& s);

double diameter(const SubsetView& s);
double diameter(const FiniteMetricSpace& x);
/// Minimum distance over distinct pairs; +infinity for a singleton.
double separation(const SubsetView& s);
double separation(const FiniteMetricSpace& x);

/// Every point within distance r of `center` (closed ball, center included).
SubsetView closed_ball(const FiniteMetricSpace& x, std::size_t center, double r);

/// Hausdorff distance between two subsets of `z`. Throws DifferentBaseSpace
/// when either subset is not a view into `z`.
double hausdorff_distance(const FiniteMetricSpace& z, const SubsetView& s, const SubsetView& t);

/// x_i -> (d(x_i, x_1), ..., d(x_i, x_n)). The embedding is checked to be an
/// isometry within `tol` before returning.
EmbeddedVectors frechet_embed(const FiniteMetricSpace& x, double tol = kDefaultTolMetric);

}  // namespace assouad
