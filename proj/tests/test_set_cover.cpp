#include <doctest.h>

#include <bit>
#include <random>

#include "oracles.hpp"
#include "set_cover.hpp"

using namespace assouad::detail;

namespace {

std::vector<Mask> brute_maximal_cliques(const std::vector<Mask>& adj, std::size_t n) {
  std::vector<Mask> cliques;
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    bool clique = true;
    for (std::size_t v = 0; v < n && clique; ++v)
      if (s >> v & 1) clique = (adj[v] & s) == (s & ~(Mask{1} << v));
    if (!clique) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!(s >> v & 1) && (adj[v] & s) == s) maximal = false;
    if (maximal) cliques.push_back(s);
  }
  return cliques;
}

std::vector<Mask> random_graph(std::size_t n, std::mt19937_64& rng) {
  std::vector<Mask> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 2) {
        adj[u] |= Mask{1} << v;
        adj[v] |= Mask{1} << u;
      }
  return adj;
}

}  // namespace

TEST_CASE("lex_less compares sorted element lists") {
  CHECK(lex_less(0b011, 0b101));  // {0,1} < {0,2}
  CHECK(lex_less(0b001, 0b011));  // {0} is a prefix of {0,1}
  CHECK_FALSE(lex_less(0b100, 0b011));
  CHECK_FALSE(lex_less(0b101, 0b101));
}

TEST_CASE("property: Bron-Kerbosch finds exactly the maximal cliques") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 11;
    const auto adj = random_graph(n, rng);
    auto got = maximal_cliques(adj, (Mask{1} << n) - 1);
    auto want = brute_maximal_cliques(adj, n);
    std::sort(want.begin(), want.end(), lex_less);
    CHECK(got == want);
  }
}

TEST_CASE("remove_dominated keeps maximal sets in order") {
  const std::vector<Mask> sets{0b0011, 0b0001, 0b0111, 0b1000, 0b0111};
  CHECK(remove_dominated(sets) == std::vector<Mask>{0b0111, 0b1000});
}

TEST_CASE("property: exact cover matches enumeration; greedy is a valid cover") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t elems = 1 + rng() % 12, k = 1 + rng() % 12;
    const Mask universe = (Mask{1} << elems) - 1;
    std::vector<Mask> sets;
    for (std::size_t s = 0; s < k; ++s) sets.push_back(rng() & universe);
    for (std::size_t e = 0; e < elems; ++e) sets[e % k] |= Mask{1} << e;  // coverable

    const auto greedy = greedy_set_cover(universe, sets);
    Mask u = 0;
    for (auto s : greedy) u |= sets[s];
    CHECK(u == universe);

    const auto exact = exact_set_cover(universe, sets, greedy);
    u = 0;
    for (auto s : exact) u |= sets[s];
    CHECK(u == universe);
    CHECK(exact.size() == oracle::min_cover_by_enumeration(universe, sets));
    CHECK(exact.size() <= greedy.size());
  }
}
