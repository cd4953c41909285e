#include "assouad/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "assouad/errors.hpp"
#include "assouad/kernels.hpp"

namespace assouad {

FiniteMetricSpace make_space_unchecked_impl(std::vector<double> d, std::size_t n,
                                            std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  auto s = std::make_shared<FiniteMetricSpace::Storage>();
  s->n = n;
  s->d = std::move(d);
  s->labels = std::move(labels);
  return FiniteMetricSpace(std::move(s));
}

namespace detail {
FiniteMetricSpace make_space_unchecked(std::vector<double> d, std::size_t n,
                                       std::vector<std::string> labels) {
  return make_space_unchecked_impl(std::move(d), n, std::move(labels));
}
}  // namespace detail

double FiniteMetricSpace::distance(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw InvalidArgument("point index out of range");
  return (*this)(i, j);
}

// ---------------------------------------------------------------------------

SubsetView::SubsetView(FiniteMetricSpace base, std::vector<std::size_t> indices)
    : base_(std::move(base)), indices_(std::move(indices)) {
  if (indices_.empty()) throw EmptySubset();
  std::vector<char> seen(base_.size(), 0);
  for (std::size_t i : indices_) {
    if (i >= base_.size())
      throw InvalidArgument("subset index " + std::to_string(i) + " out of range");
    if (seen[i]) throw InvalidArgument("duplicate subset index " + std::to_string(i));
    seen[i] = 1;
  }
}

SubsetView SubsetView::all(const FiniteMetricSpace& base) {
  std::vector<std::size_t> idx(base.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return SubsetView(base, std::move(idx));
}

bool SubsetView::contains(std::size_t base_index) const {
  return std::find(indices_.begin(), indices_.end(), base_index) != indices_.end();
}

double EmbeddedVectors::distance(std::size_t i, std::size_t j) const {
  const auto& a = vectors.at(i);
  const auto& b = vectors.at(j);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// ---------------------------------------------------------------------------

FiniteMetricSpace validate_metric(std::vector<double> d, std::size_t n,
                                  std::vector<std::string> labels, double tol) {
  if (n == 0) throw MalformedMatrix("distance matrix is empty");
  if (d.size() != n * n) throw MalformedMatrix("distance matrix is not square");
  if (!labels.empty() && labels.size() != n)
    throw MalformedMatrix("expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels.size()));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(d[i * n + j])) throw NonFiniteEntry(i, j);
  for (std::size_t i = 0; i < n; ++i)
    if (d[i * n + i] != 0.0) throw NonZeroDiagonal(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i * n + j] < 0.0) throw NegativeDistance(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i * n + j] == 0.0) throw ZeroOffDiagonal(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(d[i * n + j] - d[j * n + i]) > tol) throw AsymmetryError(i, j);
      d[j * n + i] = d[i * n + j];
    }
  if (auto w = kernels::parallel::triangle_scan(d, n, tol))
    throw TriangleViolation(w->i, w->j, w->k, w->deficit);

  return detail::make_space_unchecked(std::move(d), n, std::move(labels));
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels, double tol) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw MalformedMatrix("distance matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return validate_metric(std::move(flat), n, std::move(labels), tol);
}

FiniteMetricSpace scale(const FiniteMetricSpace& x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw NonPositiveScale(h);
  std::vector<double> d(x.matrix().begin(), x.matrix().end());
  for (double& v : d) v *= h;
  return detail::make_space_unchecked(std::move(d), x.size(), x.labels());
}

FiniteMetricSpace restrict_to(const SubsetView& s) {
  const std::size_t m = s.size();
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(s.base().label(s[a]));
    for (std::size_t b = 0; b < m; ++b) d[a * m + b] = s.distance(a, b);
  }
  return detail::make_space_unchecked(std::move(d), m, std::move(labels));
}

double diameter(const SubsetView& s) {
  if (s.size() == 0) throw EmptySubset();
  return kernels::parallel::subset_extent(s.base().matrix(), s.base().size(), s.indices()).diameter;
}

double diameter(const FiniteMetricSpace& x) { return diameter(SubsetView::all(x)); }

double separation(const SubsetView& s) {
  if (s.size() == 0) throw EmptySubset();
  return kernels::parallel::subset_extent(s.base().matrix(), s.base().size(), s.indices())
      .separation;
}

double separation(const FiniteMetricSpace& x) { return separation(SubsetView::all(x)); }

SubsetView closed_ball(const FiniteMetricSpace& x, std::size_t center, double r) {
  if (center >= x.size()) throw InvalidArgument("ball center out of range");
  if (!(r >= 0.0)) throw InvalidArgument("ball radius must be non-negative");
  std::vector<std::size_t> idx;
  const auto row = x.row(center);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (row[i] <= r) idx.push_back(i);
  return SubsetView(x, std::move(idx), SubsetView::Unchecked{});
}

double hausdorff_distance(const FiniteMetricSpace& z, const SubsetView& s, const SubsetView& t) {
  if (!s.base().same_instance(z) || !t.base().same_instance(z)) throw DifferentBaseSpace();
  if (s.size() == 0 || t.size() == 0) throw EmptySubset();
  const auto d = z.matrix();
  return std::max(kernels::parallel::directed_hausdorff(d, z.size(), s.indices(), t.indices()),
                  kernels::parallel::directed_hausdorff(d, z.size(), t.indices(), s.indices()));
}

EmbeddedVectors frechet_embed(const FiniteMetricSpace& x, double tol) {
  EmbeddedVectors out;
  out.dimension = x.size();
  out.vectors.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = x.row(i);
    out.vectors.emplace_back(r.begin(), r.end());
  }
  // max_k |d(i,k) - d(j,k)| >= d(i,j) always (take k = j); the excess is the
  // amount by which the sup-metric overshoots.
  const double excess = kernels::parallel::profile_excess(x.matrix(), x.size());
  if (excess > tol) throw VerificationFailed(0, 0, 0);
  return out;
}

}  // namespace assouad
