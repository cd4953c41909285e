#include "assouad/covering.hpp"

#include <algorithm>
#include <numeric>

#include "assouad/errors.hpp"
#include "set_cover.hpp"

namespace assouad {

const char* to_string(CoverMode m) { return m == CoverMode::exact ? "exact" : "greedy"; }
const char* to_string(Exactness e) { return e == Exactness::exact ? "exact" : "upper-bound"; }

namespace detail {

std::vector<std::vector<std::size_t>> greedy_cover_blocks(const FiniteMetricSpace& x,
                                                          const std::vector<std::size_t>& members,
                                                          double r, double rel_tol) {
  const std::size_t m = members.size();
  const double lim = r * (1.0 + rel_tol);

  // neighbours within r, in (distance, index) order; the anchor comes first
  std::vector<std::vector<std::size_t>> nbrs(m);
  for (std::size_t a = 0; a < m; ++a) {
    auto& list = nbrs[a];
    for (std::size_t b = 0; b < m; ++b)
      if (x(members[a], members[b]) <= lim) list.push_back(b);
    std::sort(list.begin(), list.end(), [&](std::size_t p, std::size_t q) {
      const double dp = x(members[a], members[p]);
      const double dq = x(members[a], members[q]);
      if (dp != dq) return dp < dq;
      return members[p] < members[q];
    });
  }

  std::vector<char> covered(m, 0);
  std::vector<std::vector<std::size_t>> block(m);  // local indices, growth order
  std::vector<std::vector<std::size_t>> key(m);    // sorted base indices
  std::vector<char> dirty(m, 1);

  const auto grow = [&](std::size_t a) {
    auto& b = block[a];
    b.clear();
    for (std::size_t p : nbrs[a]) {
      if (covered[p]) continue;
      bool fits = true;
      for (std::size_t q : b)
        if (x(members[p], members[q]) > lim) {
          fits = false;
          break;
        }
      if (fits) b.push_back(p);
    }
    auto& k = key[a];
    k.clear();
    for (std::size_t p : b) k.push_back(members[p]);
    std::sort(k.begin(), k.end());
    dirty[a] = 0;
  };

  std::vector<std::vector<std::size_t>> out;
  std::size_t remaining = m;
  while (remaining > 0) {
    std::size_t best = m;
    for (std::size_t a = 0; a < m; ++a) {
      if (covered[a]) continue;
      if (dirty[a]) grow(a);
      if (best == m || key[a].size() > key[best].size() ||
          (key[a].size() == key[best].size() && key[a] < key[best]))
        best = a;
    }
    const std::vector<std::size_t> chosen = block[best];
    for (std::size_t p : chosen) {
      covered[p] = 1;
      for (std::size_t q : nbrs[p]) dirty[q] = 1;
    }
    remaining -= chosen.size();
    out.push_back(key[best]);
  }
  return out;
}

}  // namespace detail

CoverCertificate covering_number(const FiniteMetricSpace& x, const SubsetView& s, double r,
                                 CoverMode mode, const CoverOptions& options) {
  if (!(r > 0.0)) throw InvalidArgument("covering radius must be positive");
  if (s.size() == 0) throw EmptySubset();
  if (!s.base().same_instance(x)) throw DifferentBaseSpace();

  CoverCertificate cert;
  cert.radius = r;
  const auto& members = s.indices();

  if (mode == CoverMode::greedy) {
    for (auto& b : detail::greedy_cover_blocks(x, members, r, options.rel_tol))
      cert.blocks.emplace_back(x, std::move(b));
    cert.count = cert.blocks.size();
    cert.exactness = Exactness::upper_bound;
    return cert;
  }

  const std::size_t m = members.size();
  const std::size_t limit = std::min<std::size_t>(options.exact_cover_limit, 64);
  if (m > limit) throw ExactLimitExceeded(m, options.exact_cover_limit);

  using detail::Mask;
  const double lim = r * (1.0 + options.rel_tol);
  std::vector<Mask> adj(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && x(members[a], members[b]) <= lim) adj[a] |= Mask{1} << b;
  const Mask universe = m == 64 ? ~Mask{0} : (Mask{1} << m) - 1;

  const auto cliques = detail::maximal_cliques(adj, universe);
  auto chosen = detail::greedy_set_cover(universe, cliques);
  chosen = detail::exact_set_cover(universe, cliques, std::move(chosen));

  // report disjoint blocks: each point goes to the first chosen clique holding it
  Mask assigned = 0;
  std::vector<Mask> parts;
  for (std::size_t c : chosen) {
    parts.push_back(cliques[c] & ~assigned);
    assigned |= cliques[c];
  }
  std::sort(parts.begin(), parts.end(), detail::lex_less);
  for (Mask p : parts) {
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < m; ++a)
      if (p >> a & 1) idx.push_back(members[a]);
    std::sort(idx.begin(), idx.end());
    cert.blocks.emplace_back(x, std::move(idx));
  }
  cert.count = cert.blocks.size();
  cert.exactness = Exactness::exact;
  return cert;
}

SubsetView max_separated_set(const FiniteMetricSpace& x, const SubsetView& s, double r,
                             double rel_tol) {
  if (!(r > 0.0)) throw InvalidArgument("separation radius must be positive");
  if (s.size() == 0) throw EmptySubset();
  if (!s.base().same_instance(x)) throw DifferentBaseSpace();
  std::vector<std::size_t> order = s.indices();
  std::sort(order.begin(), order.end());
  const double lim = r * (1.0 - rel_tol);
  std::vector<std::size_t> kept;
  for (std::size_t p : order) {
    bool ok = true;
    for (std::size_t q : kept)
      if (x(p, q) < lim) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(p);
  }
  return SubsetView(x, std::move(kept));
}

namespace {

// Least card(F) with S inside B(F, rho), F ranging over all of X.
std::pair<std::size_t, bool> centers_needed(const FiniteMetricSpace& x,
                                            const std::vector<std::size_t>& s, double rho,
                                            const CoverOptions& options) {
  const std::size_t n = x.size();
  const double lim = rho * (1.0 + options.rel_tol);
  if (s.size() <= std::min<std::size_t>(options.exact_cover_limit, 64)) {
    using detail::Mask;
    std::vector<Mask> sets;
    for (std::size_t f = 0; f < n; ++f) {
      Mask m = 0;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (x(f, s[a]) <= lim) m |= Mask{1} << a;
      if (m) sets.push_back(m);
    }
    sets = detail::remove_dominated(sets);
    const Mask universe = s.size() == 64 ? ~Mask{0} : (Mask{1} << s.size()) - 1;
    auto chosen = detail::greedy_set_cover(universe, sets);
    chosen = detail::exact_set_cover(universe, sets, std::move(chosen));
    return {chosen.size(), true};
  }
  // greedy: repeatedly the center covering most uncovered points, lowest index on ties
  std::vector<char> covered(s.size(), 0);
  std::size_t left = s.size();
  std::size_t count = 0;
  while (left > 0) {
    std::size_t best = n, best_gain = 0;
    for (std::size_t f = 0; f < n; ++f) {
      std::size_t gain = 0;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (!covered[a] && x(f, s[a]) <= lim) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = f;
      }
    }
    for (std::size_t a = 0; a < s.size(); ++a)
      if (!covered[a] && x(best, s[a]) <= lim) covered[a] = 1;
    left -= best_gain;
    ++count;
  }
  return {count, false};
}

}  // namespace

DoublingEstimate doubling_constant_empirical(const FiniteMetricSpace& x,
                                             const CoverOptions& options) {
  if (x.empty()) throw EmptySubset();
  const std::size_t n = x.size();
  DoublingEstimate est;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> radii(x.row(c).begin(), x.row(c).end());
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double R : radii) {
      const SubsetView ball = closed_ball(x, c, R);
      ++est.balls_examined;
      if (ball.size() < 2) continue;
      const double rho = diameter(ball) / 2.0;
      const auto [need, exact] = centers_needed(x, ball.indices(), rho, options);
      est.exact = est.exact && exact;
      if (need > est.constant) {
        est.constant = need;
        est.witness_center = c;
        est.witness_radius = R;
      }
    }
  }
  return est;
}

report::Json to_json(const CoverCertificate& c) {
  report::Json j;
  j["radius"] = c.radius;
  j["count"] = c.count;
  j["exactness"] = to_string(c.exactness);
  j["blocks_within_subset"] = c.blocks_within_subset;
  report::Json blocks = report::Json::array();
  for (const auto& b : c.blocks) blocks.push_back(b.indices());
  j["blocks"] = std::move(blocks);
  return j;
}

report::Json to_json(const DoublingEstimate& d) {
  report::Json j;
  j["constant"] = d.constant;
  j["exact"] = d.exact;
  j["restricted_to"] = "balls";
  j["witness_center"] = d.witness_center;
  j["witness_radius"] = d.witness_radius;
  j["balls_examined"] = d.balls_examined;
  return j;
}

}  // namespace assouad
