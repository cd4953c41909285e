#include "assouad/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "assouad/errors.hpp"
#include "assouad/kernels.hpp"

namespace assouad {

FiniteMetricSpace cantor_sample(int level) {
  if (level < 0) throw InvalidArgument("Cantor level must be non-negative");
  if (level > 14) throw LevelTooLarge(level);
  // left endpoints as integers over 3^level
  std::vector<std::int64_t> lefts{0};
  for (int k = 0; k < level; ++k) {
    std::vector<std::int64_t> next;
    for (auto l : lefts) next.push_back(3 * l);
    for (auto l : lefts) next.push_back(3 * l + 2);
    lefts = std::move(next);
  }
  std::vector<std::int64_t> pts;
  for (auto l : lefts) {
    pts.push_back(l);
    pts.push_back(l + 1);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const double denom = std::pow(3.0, level);
  const std::size_t n = pts.size();
  std::vector<double> d(n * n);
  std::vector<std::string> labels;
  const std::string suffix = "/" + std::to_string(static_cast<std::int64_t>(denom));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(pts[i]) + suffix);
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = static_cast<double>(std::llabs(pts[i] - pts[j])) / denom;
  }
  return detail::make_space_unchecked(std::move(d), n, std::move(labels));
}

FiniteMetricSpace line_points(const std::vector<double>& points, std::vector<std::string> labels) {
  const std::size_t n = points.size();
  if (n == 0) throw EmptySubset();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(points[i] - points[j]);
  if (labels.empty())
    for (double p : points) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", p);
      labels.emplace_back(buf);
    }
  return validate_metric(std::move(d), n, std::move(labels));
}

FiniteMetricSpace arithmetic_progression(std::size_t n, double step) {
  if (!(step > 0.0)) throw NonPositiveScale(step);
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) * step;
  return line_points(pts);
}

FiniteMetricSpace sup_grid(std::size_t side, double spacing) {
  if (side == 0) throw EmptySubset();
  if (!(spacing > 0.0)) throw NonPositiveScale(spacing);
  const std::size_t n = side * side;
  std::vector<double> d(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    const auto ax = static_cast<long>(a % side), ay = static_cast<long>(a / side);
    labels.push_back("(" + std::to_string(ax) + "," + std::to_string(ay) + ")");
    for (std::size_t b = 0; b < n; ++b) {
      const auto bx = static_cast<long>(b % side), by = static_cast<long>(b / side);
      d[a * n + b] = static_cast<double>(std::max(std::labs(ax - bx), std::labs(ay - by))) * spacing;
    }
  }
  return detail::make_space_unchecked(std::move(d), n, std::move(labels));
}

FiniteMetricSpace graph_length_space(std::size_t vertices, const std::vector<Edge>& edges,
                                     std::vector<std::string> labels) {
  if (vertices == 0) throw EmptySubset();
  kernels::Adjacency adj(vertices);
  for (const auto& e : edges) {
    if (e.u >= vertices || e.v >= vertices) throw InvalidArgument("edge endpoint out of range");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw InvalidArgument("edge lengths must be positive and finite");
    if (e.u == e.v) continue;
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  auto d = kernels::parallel::all_pairs_shortest_paths(adj);
  for (double v : d)
    if (!std::isfinite(v)) throw DisconnectedGraph();
  return detail::make_space_unchecked(std::move(d), vertices, std::move(labels));
}

FiniteMetricSpace path_graph(double a, double b, std::size_t segments) {
  if (segments == 0 || !(b > a)) throw InvalidArgument("path needs b > a and at least one segment");
  const double h = (b - a) / static_cast<double>(segments);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= segments; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(i) * h);
    labels.emplace_back(buf);
    if (i < segments) edges.push_back({i, i + 1, h});
  }
  return graph_length_space(segments + 1, edges, std::move(labels));
}

// ---------------------------------------------------------------------------

namespace {

FiniteMetricSpace fit_component(const FiniteMetricSpace& x, std::size_t i, bool rescale) {
  const double bound = std::ldexp(1.0, -static_cast<int>(i));
  const double delta = diameter(x);
  if (!rescale) {
    if (delta > bound) throw DiameterBoundViolated(i);
    return x;
  }
  if (delta == 0.0) return x;
  double h = bound / delta;
  FiniteMetricSpace y = scale(x, h);
  while (diameter(y) > bound) {  // rounding can land one ulp high
    h = std::nextafter(h, 0.0);
    y = scale(x, h);
  }
  return y;
}

}  // namespace

FiniteMetricSpace telescope(const TelescopeSpec& spec) {
  std::vector<FiniteMetricSpace> parts;
  std::size_t n = 1;
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    if (spec.components[i].empty()) throw EmptySubset();
    parts.push_back(fit_component(spec.components[i], i, spec.rescale));
    n += parts.back().size();
  }

  std::vector<std::size_t> block(n, 0);  // component of each point, shifted by one
  std::vector<std::size_t> local(n, 0);
  std::vector<std::string> labels{spec.infinity_label};
  for (std::size_t i = 0, p = 1; i < parts.size(); ++i)
    for (std::size_t a = 0; a < parts[i].size(); ++a, ++p) {
      block[p] = i + 1;
      local[p] = a;
      labels.push_back("X" + std::to_string(i) + ":" + parts[i].label(a));
    }

  std::vector<double> d(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      double v;
      if (block[p] == 0 || block[q] == 0) {
        v = std::ldexp(1.0, -static_cast<int>(std::max(block[p], block[q]) - 1));
      } else if (block[p] == block[q]) {
        v = parts[block[p] - 1](local[p], local[q]);
      } else {
        v = std::ldexp(1.0, -static_cast<int>(std::min(block[p], block[q]) - 1));
      }
      d[p * n + q] = v;
    }
  return validate_metric(std::move(d), n, std::move(labels));
}

std::size_t telescope_index(const TelescopeSpec& spec, std::size_t component, std::size_t point) {
  if (component >= spec.components.size() || point >= spec.components[component].size())
    throw InvalidArgument("telescope point out of range");
  std::size_t idx = 1;
  for (std::size_t i = 0; i < component; ++i) idx += spec.components[i].size();
  return idx + point;
}

std::vector<double> factorial_rescale_schedule(const std::vector<double>& diameters) {
  if (diameters.size() > 21) throw InvalidArgument("factorial schedule limited to i <= 20");
  std::vector<double> r;
  double fact = 1.0;
  for (std::size_t i = 0; i < diameters.size(); ++i) {
    fact *= static_cast<double>(i + 1);
    r.push_back(fact * diameters[i]);
  }
  return r;
}

}  // namespace assouad
