#pragma once
// Streaming estimation of the number of "interesting" k-subsets.
//
// One pass, three levels:
//   - SingleRunEstimator samples k-subsets of every stream element with one
//     hash of range q and keeps exact occurrence counts for the sampled keys.
//     It reports SENTINEL when the distinct sampled keys ever exceed 32*s
//     (capacity guard, decided online and never retracted) or end below s.
//   - A guessing ladder runs num_runs single runs with q_i scaled to a
//     doubling guess z_i of the distinct-subset count and keeps the valid run
//     with the smallest index.
//   - num_copies independent ladders are combined by medians; the product of
//     the two medians estimates the interesting-subset count.
//
// The same scaffold serves frequent-itemset counting (subsets sampled per
// transaction) and the graph counters (subsets sampled per incidence entry),
// so the per-element sampling step is supplied as a closure.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cssample/common.hpp"
#include "cssample/hashing.hpp"
#include "cssample/sampler.hpp"
#include "cssample/subset.hpp"

namespace css {

// Interest criterion over (subset, exact occurrence count).
using Predicate = std::function<bool(const Subset&, std::uint64_t)>;

Predicate min_support_predicate(std::uint64_t threshold);
Predicate frequency_range_predicate(std::uint64_t lo, std::uint64_t hi);
Predicate frequency_equals_predicate(std::uint64_t value);

struct EstimatorConfig {
  int k = 2;
  double alpha = 1.0;    // admissible interesting/distinct ratio
  double epsilon = 1.0;  // relative error target, in (0, 1]
  double delta = 0.5;    // failure probability target, in (0, 1)
  std::uint64_t m = 1;   // declared stream length (upper bound, enforced)
  std::size_t b_max = 0; // declared bound on element-set size
  std::uint64_t master_seed = 0;
  Predicate predicate;

  // Base of the doubling guess ladder; defaults to C(b_max, k).
  std::optional<std::uint64_t> ladder_base;

  // Test hooks: pin the hash range of every run / the target sample size.
  std::optional<std::uint64_t> force_q;
  std::optional<std::uint64_t> force_s;

  // Derived quantities (never stored, so they cannot go stale).
  std::uint64_t sample_target() const;  // s = ceil(8 / (alpha * epsilon^2))
  int num_runs() const;                 // floor(log2 m) + 1
  int num_copies() const;               // ceil(log2(2 / delta))
  std::uint64_t guess(int run) const;   // z_i = 2^i * ladder base
  std::uint64_t run_range(int run) const;  // q_i = max(ceil(z_i / 2s), 1)

  void validate() const;
};

class SingleRunEstimator {
 public:
  SingleRunEstimator(PolynomialHash hash, int run_index, std::uint64_t guess,
                     std::uint64_t sample_target);

  const HashFunction& hash() const { return hash_; }

  // Accounts one stream element's sampled subsets.  No-op once the capacity
  // guard has fired.
  void offer(const std::vector<Subset>& sampled);

  struct Result {
    int run = 0;
    std::uint64_t guess = 0;
    std::uint64_t range = 1;           // q of this run
    std::uint64_t sampled_distinct = 0;
    bool sentinel = true;
    double alpha_hat = 0.0;            // interesting / distinct, valid runs only
    double z_hat = 0.0;                // q * distinct, valid runs only
  };

  Result finish(const Predicate& predicate) const;

  const std::unordered_map<Subset, std::uint64_t, SubsetHasher>& table() const {
    return table_;
  }
  bool overflowed() const { return overflowed_; }

 private:
  PolynomialHash hash_;
  int run_index_;
  std::uint64_t guess_;
  std::uint64_t target_;
  std::unordered_map<Subset, std::uint64_t, SubsetHasher> table_;
  std::uint64_t distinct_at_abort_ = 0;
  bool overflowed_ = false;
};

struct RunDiagnostics {
  int copy = 0;
  int run = 0;
  std::uint64_t guess = 0;
  std::uint64_t range = 1;
  std::uint64_t sampled_distinct = 0;
  bool sentinel = true;
};

struct CopyDiagnostics {
  int copy = 0;
  bool sentinel = true;
  int chosen_run = -1;  // valid run with the smallest index, -1 if none
  std::optional<double> alpha_hat;
  std::optional<double> z_hat;
};

struct EstimateReport {
  std::optional<double> alpha_hat;  // median of valid per-copy ratios
  std::optional<double> z_hat;      // median of valid per-copy scaled counts
  std::optional<double> f_hat;      // alpha_hat * z_hat when enough copies held
  std::vector<RunDiagnostics> runs;
  std::vector<CopyDiagnostics> copies;

  bool failed() const { return !f_hat.has_value(); }
};

// One stream element, closed over its payload; sampled on demand with each
// run's own hash function.
using SampleFn = std::function<std::vector<Subset>(const HashFunction&)>;

// Consumes the stream exactly once, fanning each element out to every
// (copy, run) estimator.  Stream ends when the source returns nullopt.
EstimateReport run_sampling_estimators(
    const std::function<std::optional<SampleFn>()>& stream,
    const EstimatorConfig& cfg);

// Frequent-itemset front end: elements are transactions, subsets are sampled
// with sample_bset.  Transactions larger than b_max or streams longer than m
// raise IngestError (positions are 1-based stream ordinals).
EstimateReport estimate_frequent_itemsets(const std::vector<BSet>& transactions,
                                          const EstimatorConfig& cfg);

// Exact oracle: full frequency table of all k-subsets across the stream.
// Throws std::length_error when the distinct count exceeds cap.
std::unordered_map<Subset, std::uint64_t, SubsetHasher> exact_frequency_table(
    const std::vector<BSet>& transactions, int k,
    std::uint64_t cap = 5'000'000);

struct ExactCounts {
  std::uint64_t interesting = 0;  // f
  std::uint64_t distinct = 0;     // z
};

ExactCounts exact_count_oracle(const std::vector<BSet>& transactions, int k,
                               const Predicate& predicate,
                               std::uint64_t cap = 5'000'000);

}  // namespace css
