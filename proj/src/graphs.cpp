#include "cssample/graphs.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "cssample/sampler.hpp"

namespace css {

namespace {

// Sorted k-vertex-set from a half-subset, the center u, and the other half.
// All of `left` (and u when u_left) precede all of `right` (and u otherwise).
Subset assemble(std::span<const element_t> left, element_t u, bool u_left,
                std::span<const element_t> right) {
  std::vector<element_t> v;
  v.reserve(left.size() + right.size() + 1);
  const auto insert_with_u = [&v, u](std::span<const element_t> half) {
    bool placed = false;
    for (element_t e : half) {
      if (!placed && u < e) {
        v.push_back(u);
        placed = true;
      }
      v.push_back(e);
    }
    if (!placed) v.push_back(u);
  };
  if (u_left) {
    insert_with_u(left);
    v.insert(v.end(), right.begin(), right.end());
  } else {
    v.insert(v.end(), left.begin(), left.end());
    insert_with_u(right);
  }
  return Subset::trusted(std::move(v));
}

}  // namespace

void IncidenceStream::add(element_t vertex, BSet neighbors) {
  const std::size_t ordinal = entries_.size() + 1;
  if (!seen_.insert(vertex).second) {
    throw IngestError(ordinal,
                      "vertex " + std::to_string(vertex) + " repeated");
  }
  if (neighbors.contains(vertex)) {
    throw IngestError(ordinal, "self-loop at vertex " + std::to_string(vertex));
  }
  entries_.push_back({vertex, std::move(neighbors)});
}

std::size_t IncidenceStream::max_degree() const {
  std::size_t d = 0;
  for (const auto& e : entries_) d = std::max(d, e.neighbors.size());
  return d;
}

std::vector<Subset> star_sampler(element_t u, const BSet& neighbors,
                                 const HashFunction& h, int k) {
  if (k < 3) throw std::invalid_argument("star sampling requires k >= 3");
  if (neighbors.contains(u)) {
    throw std::invalid_argument("star center must not be its own neighbor");
  }
  const std::uint64_t hu = h.eval(u);
  const int left_size = k / 2;
  const int right_size = k - k / 2;
  std::vector<Subset> out;

  // u among the first left_size vertices: collide (hash(A) + h(u)) with
  // hash(B) for A of size left_size - 1 and B of size right_size.
  {
    HalfSubsetEnumerator a(neighbors, h, left_size - 1, hu);
    HalfSubsetEnumerator b(neighbors, h, right_size);
    for_each_value_collision(a, b, nullptr,
                             [&](const Subset& sa, const Subset& sb) {
      const element_t left_max = sa.empty() ? u : std::max(u, sa.back());
      if (left_max < sb.front()) {
        out.push_back(assemble(sa.elements(), u, true, sb.elements()));
      }
    });
  }

  // u among the last right_size vertices: collide hash(A) with
  // (hash(B) + h(u)) for A of size left_size and B of size right_size - 1.
  {
    HalfSubsetEnumerator a(neighbors, h, left_size);
    HalfSubsetEnumerator b(neighbors, h, right_size - 1, hu);
    for_each_value_collision(a, b, nullptr,
                             [&](const Subset& sa, const Subset& sb) {
      const element_t right_min = sb.empty() ? u : std::min(u, sb.front());
      if (sa.back() < right_min) {
        out.push_back(assemble(sa.elements(), u, false, sb.elements()));
      }
    });
  }

  std::sort(out.begin(), out.end());
  return out;
}

EstimateReport estimate_cliques(const IncidenceStream& g, int k, double gamma,
                                double epsilon, double delta,
                                std::size_t max_degree, std::uint64_t seed,
                                std::optional<std::uint64_t> force_q,
                                std::optional<std::uint64_t> force_s) {
  if (k < 3) throw std::invalid_argument("clique size must be at least 3");
  EstimatorConfig cfg;
  cfg.k = k;
  cfg.alpha = gamma;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.m = std::max<std::uint64_t>(g.size(), 1);
  cfg.b_max = max_degree;
  cfg.master_seed = seed;
  cfg.predicate = frequency_equals_predicate(static_cast<std::uint64_t>(k));
  cfg.ladder_base = std::max<std::uint64_t>(
      binomial(max_degree, static_cast<std::uint64_t>(k - 1)), 1);
  cfg.force_q = force_q;
  cfg.force_s = force_s;

  std::size_t idx = 0;
  const auto stream = [&]() -> std::optional<SampleFn> {
    if (idx == g.entries().size()) return std::nullopt;
    const IncidenceEntry& e = g.entries()[idx];
    ++idx;
    if (e.neighbors.size() > max_degree) {
      throw IngestError(idx, "neighbor list of vertex " +
                                 std::to_string(e.vertex) +
                                 " exceeds declared max degree " +
                                 std::to_string(max_degree));
    }
    return SampleFn([&e, k](const HashFunction& h) {
      return star_sampler(e.vertex, e.neighbors, h, k);
    });
  };
  return run_sampling_estimators(stream, cfg);
}

EstimateReport estimate_bicliques(const IncidenceStream& g,
                                  std::uint64_t min_left, int j, double gamma,
                                  double epsilon, double delta,
                                  std::size_t max_degree, std::uint64_t seed,
                                  std::optional<std::uint64_t> force_q,
                                  std::optional<std::uint64_t> force_s) {
  if (j < 2) throw std::invalid_argument("adjacency size must be at least 2");
  if (min_left < 1) throw std::invalid_argument("left support must be >= 1");
  std::vector<BSet> transactions;
  transactions.reserve(g.size());
  for (const auto& e : g.entries()) transactions.push_back(e.neighbors);

  EstimatorConfig cfg;
  cfg.k = j;
  cfg.alpha = gamma;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.m = std::max<std::uint64_t>(g.size(), 1);
  cfg.b_max = max_degree;
  cfg.master_seed = seed;
  cfg.predicate = min_support_predicate(min_left);
  cfg.force_q = force_q;
  cfg.force_s = force_s;
  return estimate_frequent_itemsets(transactions, cfg);
}

CliqueCounts exact_clique_counts(const IncidenceStream& g, int k) {
  if (k < 2) throw std::invalid_argument("clique size must be at least 2");
  constexpr std::uint64_t kWorkCap = 50'000'000;

  std::unordered_map<element_t, const BSet*> adjacency;
  adjacency.reserve(g.size());
  for (const auto& e : g.entries()) adjacency.emplace(e.vertex, &e.neighbors);

  CliqueCounts out;
  std::uint64_t work = 0;
  std::vector<element_t> members;
  for (const auto& e : g.entries()) {
    const std::uint64_t stars =
        binomial(e.neighbors.size(), static_cast<std::uint64_t>(k - 1));
    out.stars = (out.stars > std::numeric_limits<std::uint64_t>::max() - stars)
                    ? std::numeric_limits<std::uint64_t>::max()
                    : out.stars + stars;
    work = (work > std::numeric_limits<std::uint64_t>::max() - stars)
               ? std::numeric_limits<std::uint64_t>::max()
               : work + stars;
    if (work > kWorkCap) {
      throw std::length_error("clique oracle capacity exceeded");
    }
    // Count each clique at its minimum vertex; membership of the other k-1
    // in every member's list certifies the clique.
    for_each_combination(e.neighbors.elements(), k - 1,
                         [&](std::span<const element_t> c) {
      if (e.vertex >= c.front()) return;
      members.assign(1, e.vertex);
      members.insert(members.end(), c.begin(), c.end());
      for (std::size_t i = 1; i < members.size(); ++i) {
        const auto it = adjacency.find(members[i]);
        if (it == adjacency.end()) return;
        for (std::size_t j = 0; j < members.size(); ++j) {
          if (j != i && !it->second->contains(members[j])) return;
        }
      }
      ++out.cliques;
    });
  }
  return out;
}

BicliqueCounts exact_biclique_counts(const IncidenceStream& g,
                                     std::uint64_t min_left, int j) {
  if (j < 1) throw std::invalid_argument("adjacency size must be at least 1");
  std::vector<BSet> transactions;
  transactions.reserve(g.size());
  for (const auto& e : g.entries()) transactions.push_back(e.neighbors);
  const ExactCounts c =
      exact_count_oracle(transactions, j, min_support_predicate(min_left));
  return {c.interesting, c.distinct};
}

}  // namespace css
