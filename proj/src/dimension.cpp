#include "assouad/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "assouad/covering.hpp"
#include "assouad/errors.hpp"
#include "assouad/kernels.hpp"

namespace assouad {

const char* to_string(DimensionMethod m) {
  return m == DimensionMethod::subset_extremal ? "subset-extremal" : "covering-fit";
}

ScaleWindow resolve_window(const FiniteMetricSpace& x, const DimensionParams& params) {
  if (!(params.rho_min > 1.0)) throw InvalidArgument("rho_min must exceed 1");
  if (x.size() < 2) throw NoEligibleSubset();
  ScaleWindow w;
  w.rho_min = params.rho_min;
  w.r_min = params.r_min > 0.0 ? params.r_min : 2.0 * separation(x);
  w.r_max = params.r_max > 0.0 ? params.r_max : diameter(x) / 2.0;
  return w;
}

std::vector<double> dyadic_grid(double r_min, double r_max) {
  std::vector<double> g;
  if (!(r_min > 0.0)) return g;
  for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= 2.0) g.push_back(r);
  return g;
}

namespace {

std::vector<std::size_t> net_of(const FiniteMetricSpace& x, double r, double tol) {
  return max_separated_set(x, SubsetView::all(x), r, tol).indices();
}

void finish_points(std::vector<DiagnosticPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const DiagnosticPoint& a, const DiagnosticPoint& b) {
    return a.log_ratio < b.log_ratio || (a.log_ratio == b.log_ratio && a.log_count < b.log_count);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

struct Fit {
  std::vector<DiagnosticPoint> envelope;
  double slope = 0.0;
};

double lsq_slope(const std::vector<DiagnosticPoint>& p) {
  if (p.empty()) return 0.0;
  double mx = 0.0, my = 0.0;
  for (const auto& q : p) {
    mx += q.log_ratio;
    my += q.log_count;
  }
  mx /= static_cast<double>(p.size());
  my /= static_cast<double>(p.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& q : p) {
    sxx += (q.log_ratio - mx) * (q.log_ratio - mx);
    sxy += (q.log_ratio - mx) * (q.log_count - my);
  }
  if (sxx <= 0.0) return my / mx;  // one abscissa: line through the origin
  return sxy / sxx;
}

// Per-octave extreme points and the slope through them.
Fit envelope_fit(const std::vector<DiagnosticPoint>& pts, bool upper) {
  Fit fit;
  long bin = 0;
  bool open = false;
  for (const auto& p : pts) {
    const long b = static_cast<long>(std::floor(p.log_ratio / std::log(2.0) + 1e-9));
    if (!open || b != bin) {
      fit.envelope.push_back(p);
      bin = b;
      open = true;
      continue;
    }
    auto& cur = fit.envelope.back();
    if (upper ? p.log_count > cur.log_count : p.log_count < cur.log_count) cur = p;
  }
  // under one octave of spread a slope is meaningless: fall back to the
  // extreme exponent of the envelope
  const double spread = fit.envelope.back().log_ratio - fit.envelope.front().log_ratio;
  if (spread < std::log(2.0)) {
    fit.slope = upper ? 0.0 : kInfinity;
    for (const auto& p : fit.envelope) {
      const double v = p.log_count / p.log_ratio;
      fit.slope = upper ? std::max(fit.slope, v) : std::min(fit.slope, v);
    }
  } else {
    fit.slope = lsq_slope(fit.envelope);
  }
  return fit;
}

DimensionEstimate summarize(std::vector<DiagnosticPoint> pts, bool upper) {
  DimensionEstimate e;
  e.lower = !upper;
  e.points = std::move(pts);
  double ext = upper ? 0.0 : kInfinity;
  for (const auto& p : e.points) {
    const double v = p.log_count / p.log_ratio;
    ext = upper ? std::max(ext, v) : std::min(ext, v);
  }
  e.extremal_beta = ext;
  e.lsq_slope = lsq_slope(e.points);
  Fit fit = envelope_fit(e.points, upper);
  e.envelope = std::move(fit.envelope);
  e.beta_hat = std::max(0.0, fit.slope);
  // smallest constant for which card <= C ratio^beta (upper) or card >= C ratio^beta (lower)
  double c = upper ? 0.0 : kInfinity;
  for (const auto& p : e.points) {
    const double v = std::exp(p.log_count - e.beta_hat * p.log_ratio);
    c = upper ? std::max(c, v) : std::min(c, v);
  }
  e.constant_C = c;
  return e;
}

}  // namespace

std::vector<DiagnosticPoint> subset_pool(const FiniteMetricSpace& x, const DimensionParams& params,
                                         std::size_t* samples) {
  const ScaleWindow w = resolve_window(x, params);
  const auto grid = dyadic_grid(w.r_min, w.r_max);
  const double tol = params.rel_tol;
  const double min_ratio = w.rho_min * (1.0 - tol);
  std::vector<DiagnosticPoint> pts;
  std::size_t count = 0;

  const auto consider = [&](std::size_t card, double diam, double sep) {
    if (card < 2 || !(sep > 0.0)) return;
    const double ratio = diam / sep;
    if (ratio < min_ratio) return;
    ++count;
    pts.push_back({std::log(ratio), std::log(static_cast<double>(card))});
  };

  std::vector<std::vector<std::size_t>> nets;
  for (double r : grid) nets.push_back(net_of(x, r, tol));

  // every center of every R-net, with the matching radius
  std::vector<std::size_t> centers;
  std::vector<std::vector<char>> center_of(grid.size());
  for (const auto& nr : nets) centers.insert(centers.end(), nr.begin(), nr.end());
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    center_of[g].assign(centers.size(), 0);
    for (std::size_t c : nets[g])
      center_of[g][static_cast<std::size_t>(
          std::lower_bound(centers.begin(), centers.end(), c) - centers.begin())] = 1;
  }
  std::vector<double> radii;
  for (double R : grid) radii.push_back(R * (1.0 + tol));

  consider(x.size(), diameter(x), separation(x));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& net = nets[k];
    const auto e = kernels::parallel::subset_extent(x.matrix(), x.size(), net);
    consider(net.size(), e.diameter, e.separation);
    const auto prof = kernels::parallel::ball_net_profiles(x.matrix(), x.size(), net, centers, radii);
    for (std::size_t c = 0; c < centers.size(); ++c)
      for (std::size_t g = 0; g < grid.size(); ++g)
        if (center_of[g][c]) {
          const auto& p = prof[c * grid.size() + g];
          consider(p.count, p.diameter, p.separation);
        }
  }

  if (params.random_subsets > 0 && !grid.empty()) {
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::size_t> pick_center(0, x.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_radius(0, grid.size() - 1);
    for (std::size_t t = 0; t < params.random_subsets; ++t) {
      const std::size_t c = pick_center(rng);
      const double R = grid[pick_radius(rng)] * (1.0 + tol);
      std::vector<std::size_t> ball = closed_ball(x, c, R).indices();
      if (ball.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> pick_size(2, ball.size());
      const std::size_t s = pick_size(rng);
      std::shuffle(ball.begin(), ball.end(), rng);
      ball.resize(s);
      const auto e = kernels::parallel::subset_extent(x.matrix(), x.size(), ball);
      consider(s, e.diameter, e.separation);
    }
  }

  if (samples) *samples = count;
  finish_points(pts);
  return pts;
}

std::vector<DiagnosticPoint> covering_pool(const FiniteMetricSpace& x, const DimensionParams& params,
                                           std::size_t* samples) {
  const ScaleWindow w = resolve_window(x, params);
  const auto grid = dyadic_grid(w.r_min, w.r_max);
  const double tol = params.rel_tol;
  const double min_ratio = w.rho_min * (1.0 - tol);

  struct Task {
    std::size_t center;
    double R;
  };
  std::vector<Task> tasks;
  for (double R : grid)
    for (std::size_t c : net_of(x, R, tol)) tasks.push_back({c, R});

  std::vector<std::vector<DiagnosticPoint>> found(tasks.size());
  const auto nt = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::thread_limit())
  for (std::int64_t tt = 0; tt < nt; ++tt) {
    const Task& t = tasks[static_cast<std::size_t>(tt)];
    const SubsetView ball = closed_ball(x, t.center, t.R * (1.0 + tol));
    const double ds = diameter(ball);
    if (!(ds > 0.0)) continue;
    for (double r : grid) {
      if (t.R / r < min_ratio || ds / r < min_ratio) continue;
      const auto blocks = detail::greedy_cover_blocks(x, ball.indices(), r, tol);
      found[static_cast<std::size_t>(tt)].push_back(
          {std::log(ds / r), std::log(static_cast<double>(blocks.size()))});
    }
  }

  std::vector<DiagnosticPoint> pts;
  for (auto& f : found) pts.insert(pts.end(), f.begin(), f.end());
  if (samples) *samples = pts.size();
  finish_points(pts);
  return pts;
}

DimensionEstimate assouad_estimate_subsets(const FiniteMetricSpace& x, const DimensionParams& params) {
  std::size_t samples = 0;
  auto pts = subset_pool(x, params, &samples);
  if (pts.empty()) throw NoEligibleSubset();
  DimensionEstimate e = summarize(std::move(pts), true);
  e.method = DimensionMethod::subset_extremal;
  e.window = resolve_window(x, params);
  e.samples = samples;
  return e;
}

DimensionEstimate assouad_estimate_covering(const FiniteMetricSpace& x, const DimensionParams& params) {
  if (x.size() < 2) throw NoEligibleScalePair();
  std::size_t samples = 0;
  auto pts = covering_pool(x, params, &samples);
  if (pts.empty()) throw NoEligibleScalePair();
  DimensionEstimate e = summarize(std::move(pts), true);
  e.method = DimensionMethod::covering_fit;
  e.window = resolve_window(x, params);
  e.samples = samples;
  return e;
}

DimensionEstimate lower_assouad_estimate(const FiniteMetricSpace& x, const DimensionParams& params) {
  std::size_t samples = 0;
  auto pts = subset_pool(x, params, &samples);
  if (pts.empty()) throw NoEligibleSubset();
  const DimensionEstimate upper = summarize(pts, true);
  DimensionEstimate e = summarize(std::move(pts), false);
  e.method = DimensionMethod::subset_extremal;
  e.window = resolve_window(x, params);
  e.samples = samples;
  if (e.beta_hat > upper.beta_hat) {
    e.beta_hat = upper.beta_hat;
    e.capped = true;
    e.constant_C = kInfinity;
    for (const auto& p : e.points)
      e.constant_C = std::min(e.constant_C, std::exp(p.log_count - e.beta_hat * p.log_ratio));
  }
  return e;
}

report::Json to_json(const DimensionEstimate& e) {
  report::Json j;
  j["beta_hat"] = e.beta_hat;
  j["constant_C"] = e.constant_C;
  j["method"] = to_string(e.method);
  j["bound"] = e.lower ? "lower" : "upper";
  j["empirical"] = true;
  j["window"] = {{"rho_min", e.window.rho_min}, {"r_min", e.window.r_min}, {"r_max", e.window.r_max}};
  j["samples"] = e.samples;
  j["extremal_beta"] = e.extremal_beta;
  j["lsq_slope"] = e.lsq_slope;
  j["capped"] = e.capped;
  const auto pts = [](const std::vector<DiagnosticPoint>& v) {
    report::Json a = report::Json::array();
    for (const auto& p : v) a.push_back(report::Json::array({p.log_ratio, p.log_count}));
    return a;
  };
  j["envelope"] = pts(e.envelope);
  j["points"] = pts(e.points);
  return j;
}

}  // namespace assouad
