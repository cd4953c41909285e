#include "set_cover.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace assouad::detail {

bool lex_less(Mask a, Mask b) {
  while (a && b) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

namespace {

void bron_kerbosch(std::span<const Mask> adj, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (!p && !x) {
    out.push_back(r);
    return;
  }
  // pivot: vertex of p|x with most neighbours in p
  const Mask px = p | x;
  int pivot = std::countr_zero(px);
  int best = -1;
  for (Mask m = px; m; m &= m - 1) {
    const int u = std::countr_zero(m);
    const int c = std::popcount(p & adj[static_cast<std::size_t>(u)]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask m = p & ~adj[static_cast<std::size_t>(pivot)]; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    const Mask bit = Mask{1} << v;
    bron_kerbosch(adj, r | bit, p & adj[static_cast<std::size_t>(v)],
                  x & adj[static_cast<std::size_t>(v)], out);
    p &= ~bit;
    x |= bit;
  }
}

struct CoverSearch {
  std::span<const Mask> sets;
  std::vector<Mask> covered_with;  // per element: union of sets containing it
  std::vector<std::vector<std::size_t>> containing;
  std::vector<std::size_t> best;
  std::vector<std::size_t> chosen;

  int packing_bound(Mask uncovered) const {
    int count = 0;
    Mask blocked = 0;
    for (Mask m = uncovered; m; m &= m - 1) {
      const int e = std::countr_zero(m);
      if (blocked >> e & 1) continue;
      ++count;
      blocked |= covered_with[static_cast<std::size_t>(e)];
    }
    return count;
  }

  void run(Mask uncovered) {
    if (!uncovered) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (chosen.size() + static_cast<std::size_t>(packing_bound(uncovered)) >= best.size()) return;

    int pick = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (Mask m = uncovered; m; m &= m - 1) {
      const int e = std::countr_zero(m);
      const std::size_t c = containing[static_cast<std::size_t>(e)].size();
      if (c < fewest) {
        fewest = c;
        pick = e;
      }
    }
    std::vector<std::size_t> options = containing[static_cast<std::size_t>(pick)];
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
      const int ca = std::popcount(sets[a] & uncovered);
      const int cb = std::popcount(sets[b] & uncovered);
      if (ca != cb) return ca > cb;
      return lex_less(sets[a] & uncovered, sets[b] & uncovered);
    });
    for (std::size_t s : options) {
      chosen.push_back(s);
      run(uncovered & ~sets[s]);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<Mask> maximal_cliques(std::span<const Mask> adj, Mask vertices) {
  std::vector<Mask> out;
  if (!vertices) return out;
  std::vector<Mask> restricted(adj.begin(), adj.end());
  for (auto& a : restricted) a &= vertices;
  bron_kerbosch(restricted, 0, vertices, 0, out);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<Mask> remove_dominated(std::span<const Mask> sets) {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (i == j) continue;
      const bool subset = (sets[i] & ~sets[j]) == 0;
      if (subset && (sets[i] != sets[j] || j < i)) dominated = true;
    }
    if (!dominated) out.push_back(sets[i]);
  }
  return out;
}

std::vector<std::size_t> greedy_set_cover(Mask universe, std::span<const Mask> sets) {
  std::vector<std::size_t> chosen;
  Mask uncovered = universe;
  while (uncovered) {
    std::size_t best = sets.size();
    int best_count = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const int c = std::popcount(sets[s] & uncovered);
      if (c == 0) continue;
      if (c > best_count ||
          (c == best_count && lex_less(sets[s] & uncovered, sets[best] & uncovered))) {
        best = s;
        best_count = c;
      }
    }
    if (best == sets.size()) break;  // remaining elements are uncoverable
    chosen.push_back(best);
    uncovered &= ~sets[best];
  }
  return chosen;
}

std::vector<std::size_t> exact_set_cover(Mask universe, std::span<const Mask> sets,
                                         std::vector<std::size_t> incumbent) {
  CoverSearch search{sets, {}, {}, {}, {}};
  search.covered_with.assign(64, 0);
  search.containing.assign(64, {});
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (Mask m = sets[s] & universe; m; m &= m - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(m));
      search.containing[e].push_back(s);
      search.covered_with[e] |= sets[s];
    }
  if (incumbent.empty()) {
    // trivially valid upper bound: one set per element
    search.best.assign(static_cast<std::size_t>(std::popcount(universe)) + 1, 0);
  } else {
    search.best = std::move(incumbent);
  }
  search.run(universe);
  return search.best;
}

}  // namespace assouad::detail
