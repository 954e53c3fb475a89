#pragma once
// Range-partitioned CountMin / Count-Sketch over the k-subsets of each
// transaction.
//
// Every row hashes a k-subset to a bucket by the sum of its two half hashes
// (the same map that defines bucket ranges for the sampler), so worker i can
// feed its counter slice [i*t, (i+1)*t) by running the range sampler on each
// transaction instead of enumerating all C(b, k) subsets.  The union of the
// worker slices is bit-identical to a sequential sketch of the full stream.
//
// Count-Sketch signs are per-element pairwise independent ±1 functions
// combined multiplicatively, so a subset's sign is available inside any
// worker without extra coordination.

#include <cstdint>
#include <utility>
#include <vector>

#include "cssample/common.hpp"
#include "cssample/hashing.hpp"
#include "cssample/subset.hpp"

namespace css {

enum class SketchKind { count_min, count_sketch };

class PartitionedSketch {
 public:
  // width is the per-row bucket count (the hash range); workers must divide
  // width so the ranges [i*t, (i+1)*t), t = width/workers, tile it exactly.
  PartitionedSketch(SketchKind kind, int depth, std::uint64_t width,
                    int workers, int k, std::uint64_t seed);

  SketchKind kind() const { return kind_; }
  int depth() const { return depth_; }
  std::uint64_t width() const { return width_; }
  int workers() const { return workers_; }
  int k() const { return k_; }

  // Worker's bucket interval as (lo, len).
  std::pair<std::uint64_t, std::uint64_t> range_of(int worker) const;

  // Accounts the transaction's k-subsets that fall in the worker's bucket
  // range, every row; touches no counter outside that range.
  void worker_update(int worker, const BSet& transaction);

  // All workers in index order (the deterministic sequential schedule).
  void update_all(const BSet& transaction);

  // Reference route: enumerates all C(|transaction|, k) subsets directly,
  // bypassing the range sampler.
  void reference_update(const BSet& transaction);

  // CountMin: min over rows. Count-Sketch: median over rows of the
  // sign-adjusted counters (even depth averages the middle pair, truncating
  // toward zero). Requires |itemset| == k.
  std::int64_t query_frequency(const Subset& itemset) const;

  // Row-major depth x width counter array.
  const std::vector<std::int64_t>& counters() const { return counters_; }

  // Test surface.
  std::uint64_t bucket_of(int row, const Subset& itemset) const;
  int sign_of(int row, const Subset& itemset) const;

 private:
  std::int64_t increment_for(int row, const Subset& itemset) const;

  SketchKind kind_;
  int depth_;
  std::uint64_t width_;
  int workers_;
  int k_;
  std::vector<PolynomialHash> row_hash_;   // per-row bucket function
  std::vector<PolynomialHash> sign_hash_;  // per-row element-level ±1
  std::vector<std::int64_t> counters_;
};

}  // namespace css
