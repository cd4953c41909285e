#include "assouad/gh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "assouad/errors.hpp"

namespace assouad {

const char* to_string(GhKind k) { return k == GhKind::exact ? "exact" : "interval"; }

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

double pairs_distortion(const Pairs& p, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      d = std::max(d, std::abs(x(p[i].first, p[j].first) - y(p[i].second, p[j].second)));
  return d;
}

Pairs normalized(Pairs p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

void check_surjective(const Pairs& p, std::size_t n, std::size_t m) {
  std::vector<char> hx(n, 0), hy(m, 0);
  for (auto [a, b] : p) {
    if (a >= n || b >= m) throw InvalidArgument("correspondence index out of range");
    hx[a] = 1;
    hy[b] = 1;
  }
  if (std::find(hx.begin(), hx.end(), 0) != hx.end()) throw NotSurjective('X');
  if (std::find(hy.begin(), hy.end(), 0) != hy.end()) throw NotSurjective('Y');
}

std::vector<double> eccentricities(const FiniteMetricSpace& x) {
  std::vector<double> e(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (double v : x.row(i)) e[i] = std::max(e[i], v);
  return e;
}

std::vector<double> mean_distances(const FiniteMetricSpace& x) {
  std::vector<double> e(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (double v : x.row(i)) s += v;
    e[i] = s / static_cast<double>(x.size());
  }
  return e;
}

std::vector<std::size_t> by_decreasing(const std::vector<double>& key) {
  std::vector<std::size_t> order(key.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return order;
}

// ---------------------------------------------------------------------------
// Lower bounds, all in distortion units (twice the GH bound).

std::vector<double> distance_set(std::span<const double> values) {
  std::vector<double> s(values.begin(), values.end());
  s.push_back(0.0);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// max over a in A of the distance from a to sorted set B
double directed_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  std::size_t k = 0;
  for (double v : a) {
    while (k + 1 < b.size() && b[k + 1] <= v) ++k;
    double gap = std::abs(v - b[k]);
    if (k + 1 < b.size()) gap = std::min(gap, std::abs(b[k + 1] - v));
    worst = std::max(worst, gap);
  }
  return worst;
}

double set_gap(const std::vector<double>& a, const std::vector<double>& b) {
  return std::max(directed_gap(a, b), directed_gap(b, a));
}

// Each point's distance set must be matched by its partner's.
double local_profile_bound(const std::vector<std::vector<double>>& rx,
                           const std::vector<std::vector<double>>& ry) {
  double bound = 0.0;
  const auto side = [&](const auto& from, const auto& to) {
    for (const auto& r : from) {
      double best = kInfinity;
      for (const auto& s : to) {
        best = std::min(best, set_gap(r, s));
        if (best <= bound) break;
      }
      bound = std::max(bound, best);
    }
  };
  side(rx, ry);
  side(ry, rx);
  return bound;
}

double lower_bound_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  double lb = std::abs(diameter(x) - diameter(y));
  lb = std::max(lb, set_gap(distance_set(x.matrix()), distance_set(y.matrix())));
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  if (n * m * (n + m) <= 1e8) {
    std::vector<std::vector<double>> rx, ry;
    for (std::size_t i = 0; i < x.size(); ++i) rx.push_back(distance_set(x.row(i)));
    for (std::size_t i = 0; i < y.size(); ++i) ry.push_back(distance_set(y.row(i)));
    lb = std::max(lb, local_profile_bound(rx, ry));
  }
  return lb;
}

// ---------------------------------------------------------------------------
// Greedy correspondence: f then g, each point taking the partner most
// consistent with the pairs already placed.

struct FG {
  std::vector<std::size_t> f, g;
  double dis = kInfinity;
};

Pairs to_pairs(const FG& s) {
  Pairs p;
  for (std::size_t a = 0; a < s.f.size(); ++a) p.emplace_back(a, s.f[a]);
  for (std::size_t b = 0; b < s.g.size(); ++b) p.emplace_back(s.g[b], b);
  return p;
}

FG greedy_from(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t anchor,
               std::size_t partner, const std::vector<std::size_t>& xorder,
               const std::vector<std::size_t>& yorder, const std::vector<double>& mx,
               const std::vector<double>& my) {
  const std::size_t n = x.size(), m = y.size();
  FG s;
  s.f.assign(n, 0);
  s.g.assign(m, 0);
  Pairs placed{{anchor, partner}};
  s.f[anchor] = partner;
  double dis = 0.0;

  const auto pick = [&](std::size_t count, auto&& disc, auto&& profile) {
    std::size_t best = count;
    double best_disc = kInfinity, best_prof = kInfinity;
    for (std::size_t c = 0; c < count; ++c) {
      double worst = 0.0;
      for (const auto& pr : placed) {
        worst = std::max(worst, disc(c, pr));
        if (worst > best_disc) break;
      }
      if (worst > best_disc) continue;
      const double prof = profile(c);
      if (worst < best_disc || prof < best_prof) {
        best = c;
        best_disc = worst;
        best_prof = prof;
      }
    }
    dis = std::max(dis, best_disc);
    return best;
  };

  for (std::size_t a : xorder) {
    if (a == anchor) continue;
    const std::size_t b = pick(
        m,
        [&](std::size_t c, const std::pair<std::size_t, std::size_t>& pr) {
          return std::abs(x(a, pr.first) - y(c, pr.second));
        },
        [&](std::size_t c) { return std::abs(mx[a] - my[c]); });
    s.f[a] = b;
    placed.emplace_back(a, b);
  }
  for (std::size_t b : yorder) {
    const std::size_t a = pick(
        n,
        [&](std::size_t c, const std::pair<std::size_t, std::size_t>& pr) {
          return std::abs(x(c, pr.first) - y(b, pr.second));
        },
        [&](std::size_t c) { return std::abs(mx[c] - my[b]); });
    s.g[b] = a;
    placed.emplace_back(a, b);
  }
  s.dis = dis;
  return s;
}

// Single-variable moves that strictly lower the distortion.
void improve(const FiniteMetricSpace& x, const FiniteMetricSpace& y, FG& s, int max_passes) {
  const std::size_t n = x.size(), m = y.size(), k = n + m;
  Pairs p = to_pairs(s);
  std::vector<double> mat(k * k, 0.0);
  const auto disc = [&](const std::pair<std::size_t, std::size_t>& u,
                        const std::pair<std::size_t, std::size_t>& v) {
    return std::abs(x(u.first, v.first) - y(u.second, v.second));
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mat[i * k + j] = disc(p[i], p[j]);

  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (std::size_t v = 0; v < k; ++v) {
      double rest = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (i == v) continue;
        for (std::size_t j = i + 1; j < k; ++j)
          if (j != v) rest = std::max(rest, mat[i * k + j]);
      }
      if (rest >= s.dis) continue;  // v is not on every bottleneck
      const std::size_t options = v < n ? m : n;
      double best = s.dis;
      std::size_t best_w = options;
      for (std::size_t w = 0; w < options; ++w) {
        const auto cand = v < n ? std::pair{v, w} : std::pair{w, v - n};
        double worst = rest;
        for (std::size_t i = 0; i < k && worst < best; ++i)
          if (i != v) worst = std::max(worst, disc(cand, p[i]));
        if (worst < best) {
          best = worst;
          best_w = w;
        }
      }
      if (best_w == options) continue;
      p[v] = v < n ? std::pair{v, best_w} : std::pair{best_w, v - n};
      if (v < n) s.f[v] = best_w;
      else s.g[v - n] = best_w;
      for (std::size_t i = 0; i < k; ++i) mat[v * k + i] = mat[i * k + v] = disc(p[v], p[i]);
      s.dis = best;
      changed = true;
    }
    if (!changed) break;
  }
}

FG greedy_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                         const GhOptions& options) {
  const auto ex = eccentricities(x), ey = eccentricities(y);
  const auto mx = mean_distances(x), my = mean_distances(y);
  const auto xorder = by_decreasing(ex), yorder = by_decreasing(ey);
  const std::size_t anchor = xorder.front();

  std::vector<std::size_t> partners(y.size());
  std::iota(partners.begin(), partners.end(), 0);
  std::stable_sort(partners.begin(), partners.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(ey[a] - ex[anchor]) < std::abs(ey[b] - ex[anchor]);
  });
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  const std::size_t starts = n * m * (n + m) > 1e7 ? 4 : 8;
  partners.resize(std::min(partners.size(), starts));

  FG best;
  for (std::size_t partner : partners) {
    FG s = greedy_from(x, y, anchor, partner, xorder, yorder, mx, my);
    if (s.dis < best.dis) best = std::move(s);
  }
  if (x.size() + y.size() <= 64) improve(x, y, best, options.max_improvement_passes);
  return best;
}

// ---------------------------------------------------------------------------
// Exact search over (f, g): variable v < n is f(v), variable n + b is g(b).

using Mask = std::uint32_t;

struct ExactSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  std::size_t n, m, k;
  std::vector<double> rank_key;  // eccentricity of the variable's point
  double best;
  double floor;  // proven lower bound on the optimum
  std::vector<std::size_t> best_val;
  std::vector<std::size_t> val;
  std::vector<char> set;
  std::vector<std::size_t> order;  // assigned variables
  bool done = false;

  std::pair<std::size_t, std::size_t> pair_of(std::size_t v, std::size_t w) const {
    return v < n ? std::pair{v, w} : std::pair{w, v - n};
  }
  double disc(std::pair<std::size_t, std::size_t> u, std::pair<std::size_t, std::size_t> t) const {
    return std::abs(x(u.first, t.first) - y(u.second, t.second));
  }

  void run(std::vector<Mask> dom, double cur) {
    if (done) return;
    // most constrained unassigned variable; ties by eccentricity, then index
    std::size_t v = k;
    int fewest = 64;
    for (std::size_t u = 0; u < k; ++u) {
      if (set[u]) continue;
      const int c = std::popcount(dom[u]);
      if (c < fewest || (c == fewest && rank_key[u] > rank_key[v])) {
        fewest = c;
        v = u;
      }
    }
    if (v == k) {
      best = cur;
      best_val = val;
      if (best <= floor) done = true;
      return;
    }

    std::vector<std::pair<double, std::size_t>> options;
    for (Mask d = dom[v]; d; d &= d - 1) {
      const std::size_t w = static_cast<std::size_t>(std::countr_zero(d));
      const auto p = pair_of(v, w);
      double c = cur;
      for (std::size_t u : order) c = std::max(c, disc(p, pair_of(u, val[u])));
      if (c < best) options.emplace_back(c, w);
    }
    std::sort(options.begin(), options.end());

    for (auto [c, w] : options) {
      if (done || c >= best) return;
      const auto p = pair_of(v, w);
      std::vector<Mask> next = dom;
      bool dead = false;
      for (std::size_t u = 0; u < k && !dead; ++u) {
        if (set[u] || u == v) continue;
        Mask keep = 0;
        for (Mask d = next[u]; d; d &= d - 1) {
          const std::size_t t = static_cast<std::size_t>(std::countr_zero(d));
          if (disc(p, pair_of(u, t)) < best) keep |= Mask{1} << t;
        }
        next[u] = keep;
        dead = keep == 0;
      }
      if (dead) continue;
      set[v] = 1;
      val[v] = w;
      order.push_back(v);
      run(std::move(next), c);
      order.pop_back();
      set[v] = 0;
    }
  }
};

}  // namespace

Correspondence make_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  Correspondence c;
  c.pairs = normalized(std::move(pairs));
  check_surjective(c.pairs, x.size(), y.size());
  c.distortion = pairs_distortion(c.pairs, x, y);
  return c;
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  check_surjective(r.pairs, x.size(), y.size());
  return pairs_distortion(r.pairs, x, y);
}

double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.empty() || y.empty()) throw EmptySubset();
  return lower_bound_distortion(x, y) / 2.0;
}

GhResult gh_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
  if (x.empty() || y.empty()) throw EmptySubset();
  const FG s = greedy_correspondence(x, y, options);
  GhResult r;
  r.kind = GhKind::interval;
  r.witness = make_correspondence(x, y, to_pairs(s));
  r.upper = r.witness.distortion / 2.0;
  r.lower = std::min(lower_bound_distortion(x, y) / 2.0, r.upper);
  r.value = r.upper;
  return r;
}

GhResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
  if (x.empty() || y.empty()) throw EmptySubset();
  const std::size_t limit = std::min<std::size_t>(options.exact_limit, 16);
  if (x.size() > limit) throw ExactLimitExceeded(x.size(), options.exact_limit);
  if (y.size() > limit) throw ExactLimitExceeded(y.size(), options.exact_limit);

  const std::size_t n = x.size(), m = y.size();
  const FG start = greedy_correspondence(x, y, options);
  const double start_dis = pairs_distortion(to_pairs(start), x, y);

  ExactSearch search{x, y, n, m, n + m, {}, start_dis, lower_bound_distortion(x, y), {}, {}, {}, {}};
  const auto ex = eccentricities(x), ey = eccentricities(y);
  search.rank_key.insert(search.rank_key.end(), ex.begin(), ex.end());
  search.rank_key.insert(search.rank_key.end(), ey.begin(), ey.end());
  search.val.assign(n + m, 0);
  search.set.assign(n + m, 0);

  if (start_dis > search.floor) {
    std::vector<Mask> dom(n + m);
    for (std::size_t v = 0; v < n + m; ++v) dom[v] = (Mask{1} << (v < n ? m : n)) - 1;
    search.run(std::move(dom), 0.0);
  }

  Pairs pairs;
  if (search.best_val.empty()) {
    pairs = to_pairs(start);
  } else {
    for (std::size_t v = 0; v < n + m; ++v) pairs.push_back(search.pair_of(v, search.best_val[v]));
  }
  GhResult r;
  r.kind = GhKind::exact;
  r.witness = make_correspondence(x, y, std::move(pairs));
  r.value = r.lower = r.upper = r.witness.distortion / 2.0;
  return r;
}

GhResult gh_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
  if (x.size() <= options.exact_limit && y.size() <= options.exact_limit)
    return gh_exact(x, y, options);
  return gh_bounds(x, y, options);
}

ApproximationPair extract_approximation(const Correspondence& r, const FiniteMetricSpace& x,
                                        const FiniteMetricSpace& y, double tol) {
  const std::size_t n = x.size(), m = y.size();
  const double dis = distortion(r, x, y);
  ApproximationPair a;
  a.f.assign(n, m);
  a.g.assign(m, n);
  for (auto [p, q] : r.pairs) {
    if (a.f[p] == m || q < a.f[p]) a.f[p] = q;
    if (a.g[q] == n || p < a.g[q]) a.g[q] = p;
  }
  a.epsilon = dis + tol;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(std::abs(x(i, j) - y(a.f[i], a.f[j])) < a.epsilon)) throw VerificationFailed(1, i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!(std::abs(y(i, j) - x(a.g[i], a.g[j])) < a.epsilon)) throw VerificationFailed(2, i, j);
  for (std::size_t i = 0; i < n; ++i)
    if (!(x(i, a.g[a.f[i]]) < a.epsilon)) throw VerificationFailed(3, i, a.g[a.f[i]]);
  for (std::size_t i = 0; i < m; ++i)
    if (!(y(i, a.f[a.g[i]]) < a.epsilon)) throw VerificationFailed(3, i, a.f[a.g[i]]);
  return a;
}

report::Json to_json(const Correspondence& c) {
  report::Json j;
  j["distortion"] = c.distortion;
  report::Json pairs = report::Json::array();
  for (auto [a, b] : c.pairs) pairs.push_back(report::Json::array({a, b}));
  j["pairs"] = std::move(pairs);
  return j;
}

report::Json to_json(const GhResult& r) {
  report::Json j;
  j["value"] = r.value;
  j["kind"] = to_string(r.kind);
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["witness"] = to_json(r.witness);
  return j;
}

report::Json to_json(const ApproximationPair& a) {
  report::Json j;
  j["f"] = a.f;
  j["g"] = a.g;
  j["epsilon"] = a.epsilon;
  return j;
}

}  // namespace assouad
