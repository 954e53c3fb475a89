#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cssample/graphs.hpp"
#include "test_util.hpp"

using namespace css;

namespace {

// Incidence stream of an undirected graph given by its edge list.
IncidenceStream from_edges(const std::vector<element_t>& vertices,
                           const std::vector<std::pair<element_t, element_t>>& edges) {
  std::map<element_t, std::vector<element_t>> adj;
  for (element_t v : vertices) adj[v];
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  IncidenceStream g;
  for (auto& [v, n] : adj) g.add(v, BSet(std::move(n)));
  return g;
}

IncidenceStream complete_graph(int n) {
  std::vector<element_t> vs;
  std::vector<std::pair<element_t, element_t>> es;
  for (int i = 1; i <= n; ++i) vs.push_back(static_cast<element_t>(i));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      es.emplace_back(static_cast<element_t>(i), static_cast<element_t>(j));
    }
  }
  return from_edges(vs, es);
}

// All k-sets {u} + (k-1 neighbors) passing the sampling condition.
std::vector<Subset> star_brute(element_t u, const BSet& neighbors,
                               const HashFunction& h, int k) {
  std::vector<Subset> out;
  for_each_combination(neighbors.elements(), k - 1,
                       [&](std::span<const element_t> c) {
                         std::vector<element_t> all(c.begin(), c.end());
                         all.push_back(u);
                         Subset s = Subset::sorted_unique(std::move(all));
                         if (sampling_condition(h, s)) out.push_back(std::move(s));
                       });
  std::sort(out.begin(), out.end());
  return out;
}

// Occurrence counts of star sets over the whole graph at q = 1: the count of
// a k-set equals the number of its members adjacent to all the others.
std::map<Subset, std::uint64_t> star_table(const IncidenceStream& g, int k) {
  std::map<Subset, std::uint64_t> counts;
  for (const auto& e : g.entries()) {
    for_each_combination(e.neighbors.elements(), k - 1,
                         [&](std::span<const element_t> c) {
                           std::vector<element_t> all(c.begin(), c.end());
                           all.push_back(e.vertex);
                           ++counts[Subset::sorted_unique(std::move(all))];
                         });
  }
  return counts;
}

}  // namespace

TEST_CASE("incidence stream rejects repeats and self-loops") {
  IncidenceStream g;
  g.add(1, BSet({2, 3}));
  CHECK_THROWS_AS(g.add(1, BSet({4})), IngestError);
  CHECK_THROWS_AS(g.add(5, BSet({4, 5})), IngestError);
  g.add(2, BSet({1}));
  CHECK(g.size() == 2);
  CHECK(g.max_degree() == 2);
  CHECK(IncidenceStream().max_degree() == 0);
}

TEST_CASE("star sampler at q = 1 returns every incident k-set") {
  PolynomialHash h = make_hash(3, 3, 1);
  BSet neighbors({2, 3, 4, 5});
  auto out = star_sampler(1, neighbors, h, 3);
  CHECK(out.size() == 6);  // C(4, 2)
  std::set<Subset> seen(out.begin(), out.end());
  CHECK(seen.size() == 6);
  for (const auto& s : out) {
    CHECK(s.size() == 3);
    CHECK(std::binary_search(s.elements().begin(), s.elements().end(),
                             element_t{1}));
  }
}

TEST_CASE("star sampler on a triangle finds the full vertex set") {
  PolynomialHash h = make_hash(9, 3, 1);
  auto tri = complete_graph(3);
  for (const auto& e : tri.entries()) {
    auto out = star_sampler(e.vertex, e.neighbors, h, 3);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == Subset::checked({1, 2, 3}));
  }
}

TEST_CASE("star sampler validates its arguments") {
  PolynomialHash h = make_hash(3, 3, 4);
  CHECK_THROWS_AS(star_sampler(1, BSet({1, 2, 3}), h, 3), std::invalid_argument);
  CHECK_THROWS_AS(star_sampler(1, BSet({2, 3}), h, 2), std::invalid_argument);
}

TEST_CASE("star sampler equals brute force on random instances") {
  SplitMix64 rng(84);
  const std::uint64_t qs[] = {1, 2, 7};
  for (int inst = 0; inst < 120; ++inst) {
    const element_t u = 1 + rng.next() % 30;
    std::vector<element_t> pool;
    const std::size_t deg = rng.next() % 9;
    while (pool.size() < deg) {
      element_t e = 1 + rng.next() % 30;
      if (e != u) pool.push_back(e);
    }
    BSet neighbors(pool);
    const int k = 3 + static_cast<int>(rng.next() % 3);
    PolynomialHash h = make_hash(rng.next(), k, qs[rng.next() % 3]);

    auto fast = csstest::sorted_copy(star_sampler(u, neighbors, h, k));
    CHECK(std::adjacent_find(fast.begin(), fast.end()) == fast.end());
    CHECK(fast == star_brute(u, neighbors, h, k));
  }
}

TEST_CASE("exact clique counts on reference graphs") {
  {
    auto counts = exact_clique_counts(complete_graph(5), 4);
    CHECK(counts.cliques == 5);   // C(5, 4)
    CHECK(counts.stars == 20);    // 5 * C(4, 3)
  }
  {
    auto counts = exact_clique_counts(complete_graph(4), 3);
    CHECK(counts.cliques == 4);
    CHECK(counts.stars == 12);    // 4 * C(3, 2)
  }
  {
    auto path = from_edges({1, 2, 3}, {{1, 2}, {2, 3}});
    auto counts = exact_clique_counts(path, 3);
    CHECK(counts.cliques == 0);
    CHECK(counts.stars == 1);     // only vertex 2 has degree 2
  }
  {
    auto counts = exact_clique_counts(IncidenceStream(), 3);
    CHECK(counts.cliques == 0);
    CHECK(counts.stars == 0);
  }
  CHECK_THROWS_AS(exact_clique_counts(complete_graph(3), 1),
                  std::invalid_argument);
}

TEST_CASE("clique estimate is exact at pinned q = 1") {
  {
    auto report = estimate_cliques(complete_graph(4), 3, 0.5, 0.5, 0.3, 3, 11,
                                   /*force_q=*/1, /*force_s=*/1);
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(4.0));
  }
  {
    auto path = from_edges({1, 2, 3}, {{1, 2}, {2, 3}});
    auto report = estimate_cliques(path, 3, 0.5, 0.5, 0.3, 2, 11, 1, 1);
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(0.0));
  }
}

TEST_CASE("clique estimate matches the oracle on random graphs") {
  SplitMix64 rng(85);
  int done = 0;
  while (done < 40) {
    const int n = 5 + static_cast<int>(rng.next() % 6);
    std::vector<element_t> vs;
    std::vector<std::pair<element_t, element_t>> es;
    for (int i = 1; i <= n; ++i) vs.push_back(static_cast<element_t>(i));
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (rng.next() % 2 == 0) {
          es.emplace_back(static_cast<element_t>(i), static_cast<element_t>(j));
        }
      }
    }
    auto g = from_edges(vs, es);
    const int k = 3 + static_cast<int>(rng.next() % 2);

    auto table = star_table(g, k);
    if (table.empty()) continue;  // no vertex reaches degree k-1
    const std::uint64_t distinct = table.size();
    std::uint64_t cliques = 0;
    for (const auto& [s, count] : table) {
      if (count == static_cast<std::uint64_t>(k)) ++cliques;
    }

    auto oracle = exact_clique_counts(g, k);
    CHECK(oracle.cliques == cliques);  // independent cross-check

    auto report = estimate_cliques(g, k, 0.5, 0.5, 0.3, 10, rng.next(), 1,
                                   std::max<std::uint64_t>(1, (distinct + 31) / 32));
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(static_cast<double>(cliques)));
    CHECK(*report.z_hat == doctest::Approx(static_cast<double>(distinct)));
    ++done;
  }
}

TEST_CASE("clique estimator validates inputs") {
  auto g = complete_graph(4);
  CHECK_THROWS_AS(estimate_cliques(g, 2, 0.5, 0.5, 0.3, 3, 1),
                  std::invalid_argument);
  // Declared max degree below the true one: rejected while streaming.
  CHECK_THROWS_AS(estimate_cliques(g, 3, 0.5, 0.5, 0.3, 2, 1, 1, 1),
                  IngestError);
}

TEST_CASE("exact biclique counts on reference graphs") {
  {
    // Three left vertices sharing the pair {10, 11}.
    IncidenceStream g;
    g.add(1, BSet({10, 11}));
    g.add(2, BSet({10, 11}));
    g.add(3, BSet({10, 11}));
    auto c2 = exact_biclique_counts(g, 2, 2);
    CHECK(c2.bicliques == 1);
    CHECK(c2.adjacencies == 1);
    CHECK(exact_biclique_counts(g, 4, 2).bicliques == 0);
  }
  {
    auto cycle = from_edges({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    auto counts = exact_biclique_counts(cycle, 2, 2);
    CHECK(counts.bicliques == 2);  // {1,3} via {2,4} and {2,4} via {1,3}
    CHECK(counts.adjacencies == 2);
  }
  {
    // Star with five leaves: every leaf pair is covered by the center.
    IncidenceStream g;
    g.add(0, BSet({1, 2, 3, 4, 5}));
    for (element_t leaf = 1; leaf <= 5; ++leaf) g.add(leaf, BSet({0}));
    auto counts = exact_biclique_counts(g, 1, 2);
    CHECK(counts.adjacencies == 10);
    CHECK(counts.bicliques == 10);
  }
  {
    auto counts = exact_biclique_counts(IncidenceStream(), 1, 2);
    CHECK(counts.bicliques == 0);
    CHECK(counts.adjacencies == 0);
  }
}

TEST_CASE("biclique estimate is exact at pinned q = 1") {
  IncidenceStream g;
  g.add(1, BSet({10, 11}));
  g.add(2, BSet({10, 11}));
  g.add(3, BSet({10, 11}));
  {
    auto report = estimate_bicliques(g, 2, 2, 0.5, 0.5, 0.3, 2, 21, 1, 1);
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(1.0));
  }
  {
    auto report = estimate_bicliques(g, 4, 2, 0.5, 0.5, 0.3, 2, 21, 1, 1);
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(0.0));
  }
  {
    auto cycle = from_edges({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    auto report = estimate_bicliques(cycle, 2, 2, 0.5, 0.5, 0.3, 2, 21, 1, 1);
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(2.0));
  }
}

TEST_CASE("biclique estimate matches the oracle on random graphs") {
  SplitMix64 rng(86);
  const std::pair<std::uint64_t, int> cases[] = {{1, 2}, {2, 2}, {2, 3}};
  int done = 0;
  while (done < 30) {
    const int n = 5 + static_cast<int>(rng.next() % 6);
    std::vector<element_t> vs;
    std::vector<std::pair<element_t, element_t>> es;
    for (int i = 1; i <= n; ++i) vs.push_back(static_cast<element_t>(i));
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (rng.next() % 2 == 0) {
          es.emplace_back(static_cast<element_t>(i), static_cast<element_t>(j));
        }
      }
    }
    auto g = from_edges(vs, es);
    auto [min_left, j] = cases[done % 3];

    auto oracle = exact_biclique_counts(g, min_left, j);
    if (oracle.adjacencies == 0) continue;

    auto report = estimate_bicliques(
        g, min_left, j, 0.5, 0.5, 0.3, 10, rng.next(), 1,
        std::max<std::uint64_t>(1, (oracle.adjacencies + 31) / 32));
    REQUIRE_FALSE(report.failed());
    CHECK(*report.f_hat == doctest::Approx(static_cast<double>(oracle.bicliques)));
    CHECK(*report.z_hat ==
          doctest::Approx(static_cast<double>(oracle.adjacencies)));
    ++done;
  }
}

TEST_CASE("biclique estimator validates inputs") {
  IncidenceStream g;
  g.add(1, BSet({10, 11}));
  CHECK_THROWS_AS(estimate_bicliques(g, 0, 2, 0.5, 0.5, 0.3, 2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_bicliques(g, 1, 1, 0.5, 0.5, 0.3, 2, 1),
                  std::invalid_argument);
}
