#pragma once
// Clique and biclique counting over a stream of incidence lists.
//
// Each entry (vertex u, neighbor list N(u)) contributes the k-vertex-sets S
// with u in S and S \ {u} inside N(u) that satisfy the sampling condition.
// A set that is a k-clique is produced by all k of its members, so a sampled
// set is counted as a clique exactly when its occurrence count reaches k.
// Bicliques reduce to frequent itemsets: a j-subset of right vertices that
// occurs in at least i incidence lists is an (i, j)-biclique witness.

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "cssample/common.hpp"
#include "cssample/estimators.hpp"
#include "cssample/hashing.hpp"
#include "cssample/subset.hpp"

namespace css {

struct IncidenceEntry {
  element_t vertex;
  BSet neighbors;
};

class IncidenceStream {
 public:
  // Rejects repeated vertices and self-loops.
  void add(element_t vertex, BSet neighbors);

  const std::vector<IncidenceEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_degree() const;

 private:
  std::vector<IncidenceEntry> entries_;
  std::unordered_set<element_t> seen_;
};

// Every k-vertex-set S with u in S, S \ {u} inside neighbors, and the
// sampling condition true on the sorted S, found by two offset-collision
// searches (u placed in the left or in the right half).  Requires k >= 3 and
// u not in neighbors.
std::vector<Subset> star_sampler(element_t u, const BSet& neighbors,
                                 const HashFunction& h, int k);

// Estimated k-clique count; gamma bounds the admissible ratio of k-cliques
// to (k-1)-stars.  max_degree is the declared degree bound (ladder base
// C(max_degree, k-1)); entries exceeding it raise IngestError.  f_hat of the
// report is the clique-count estimate.
EstimateReport estimate_cliques(const IncidenceStream& g, int k, double gamma,
                                double epsilon, double delta,
                                std::size_t max_degree, std::uint64_t seed,
                                std::optional<std::uint64_t> force_q = {},
                                std::optional<std::uint64_t> force_s = {});

// Estimated count of j-subsets of right vertices adjacent to at least
// min_left common left vertices; delegates to the frequent-itemset pipeline
// with the incidence lists as transactions.
EstimateReport estimate_bicliques(const IncidenceStream& g,
                                  std::uint64_t min_left, int j, double gamma,
                                  double epsilon, double delta,
                                  std::size_t max_degree, std::uint64_t seed,
                                  std::optional<std::uint64_t> force_q = {},
                                  std::optional<std::uint64_t> force_s = {});

struct CliqueCounts {
  std::uint64_t cliques = 0;  // K_k
  std::uint64_t stars = 0;    // (center, leaf-set) pairs, sum of C(deg, k-1)
};

CliqueCounts exact_clique_counts(const IncidenceStream& g, int k);

struct BicliqueCounts {
  std::uint64_t bicliques = 0;    // j-subsets with frequency >= min_left
  std::uint64_t adjacencies = 0;  // distinct j-subsets across all lists
};

BicliqueCounts exact_biclique_counts(const IncidenceStream& g,
                                     std::uint64_t min_left, int j);

}  // namespace css
