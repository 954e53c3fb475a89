#include "cssample/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace css {

Predicate min_support_predicate(std::uint64_t threshold) {
  return [threshold](const Subset&, std::uint64_t freq) {
    return freq >= threshold;
  };
}

Predicate frequency_range_predicate(std::uint64_t lo, std::uint64_t hi) {
  return [lo, hi](const Subset&, std::uint64_t freq) {
    return freq >= lo && freq <= hi;
  };
}

Predicate frequency_equals_predicate(std::uint64_t value) {
  return [value](const Subset&, std::uint64_t freq) { return freq == value; };
}

std::uint64_t EstimatorConfig::sample_target() const {
  if (force_s) return *force_s;
  const double s = std::ceil(8.0 / (alpha * epsilon * epsilon));
  return s < 1.0 ? 1 : static_cast<std::uint64_t>(s);
}

int EstimatorConfig::num_runs() const {
  // floor(log2 m) + 1 == bit width of m for m >= 1.
  return static_cast<int>(std::bit_width(m));
}

int EstimatorConfig::num_copies() const {
  const int c = static_cast<int>(std::ceil(std::log2(2.0 / delta)));
  return std::max(c, 1);
}

std::uint64_t EstimatorConfig::guess(int run) const {
  const std::uint64_t base =
      ladder_base ? *ladder_base : binomial(b_max, static_cast<std::uint64_t>(k));
  if (base == 0) return 0;
  if (run >= 64 || base > (std::uint64_t{1} << (63 - std::min(run, 63)))) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return base << run;
}

std::uint64_t EstimatorConfig::run_range(int run) const {
  if (force_q) return *force_q;
  const std::uint64_t s = sample_target();
  const std::uint64_t denom = std::max<std::uint64_t>(2 * s, 1);
  const std::uint64_t z = guess(run);
  const std::uint64_t q = std::max<std::uint64_t>(z / denom + (z % denom != 0), 1);
  return std::min(q, kMaxHashRange);
}

void EstimatorConfig::validate() const {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (m < 1) throw std::invalid_argument("declared stream length m must be >= 1");
  if (!predicate) throw std::invalid_argument("predicate is required");
  if (force_q && (*force_q < 1 || *force_q > kMaxHashRange)) {
    throw std::invalid_argument("forced q outside the admissible hash range");
  }
}

SingleRunEstimator::SingleRunEstimator(PolynomialHash hash, int run_index,
                                       std::uint64_t guess,
                                       std::uint64_t sample_target)
    : hash_(std::move(hash)),
      run_index_(run_index),
      guess_(guess),
      target_(sample_target) {}

void SingleRunEstimator::offer(const std::vector<Subset>& sampled) {
  if (overflowed_) return;
  for (const Subset& s : sampled) {
    ++table_[s];
    if (table_.size() > 32 * target_) {
      // Capacity guard: decided online, never retracted; the table is dropped
      // so an abandoned run costs no further memory.
      overflowed_ = true;
      distinct_at_abort_ = table_.size();
      table_.clear();
      return;
    }
  }
}

SingleRunEstimator::Result SingleRunEstimator::finish(
    const Predicate& predicate) const {
  Result r;
  r.run = run_index_;
  r.guess = guess_;
  r.range = hash_.range();
  if (overflowed_) {
    r.sampled_distinct = distinct_at_abort_;
    r.sentinel = true;
    return r;
  }
  r.sampled_distinct = table_.size();
  if (r.sampled_distinct < target_) {
    r.sentinel = true;
    return r;
  }
  std::uint64_t interesting = 0;
  for (const auto& [subset, freq] : table_) {
    if (predicate(subset, freq)) ++interesting;
  }
  r.sentinel = false;
  r.alpha_hat = r.sampled_distinct == 0
                    ? 0.0
                    : static_cast<double>(interesting) /
                          static_cast<double>(r.sampled_distinct);
  r.z_hat = static_cast<double>(r.range) * static_cast<double>(r.sampled_distinct);
  return r;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

EstimateReport run_sampling_estimators(
    const std::function<std::optional<SampleFn>()>& stream,
    const EstimatorConfig& cfg) {
  cfg.validate();
  const int copies = cfg.num_copies();
  const int runs = cfg.num_runs();
  const std::uint64_t s = cfg.sample_target();

  std::vector<std::vector<SingleRunEstimator>> grid;
  grid.reserve(static_cast<std::size_t>(copies));
  for (int c = 0; c < copies; ++c) {
    std::vector<SingleRunEstimator> row;
    row.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
      row.emplace_back(make_hash(derive_seed(cfg.master_seed,
                                             static_cast<std::uint64_t>(c),
                                             static_cast<std::uint64_t>(i)),
                                 cfg.k, cfg.run_range(i)),
                       i, cfg.guess(i), s);
    }
    grid.push_back(std::move(row));
  }

  // Single pass: every stream element is sampled once per (copy, run) hash.
  while (auto element = stream()) {
    for (auto& row : grid) {
      for (auto& run : row) {
        run.offer((*element)(run.hash()));
      }
    }
  }

  EstimateReport report;
  std::vector<double> alpha_values;
  std::vector<double> z_values;
  for (int c = 0; c < copies; ++c) {
    CopyDiagnostics copy;
    copy.copy = c;
    for (int i = 0; i < runs; ++i) {
      const auto res = grid[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]
                           .finish(cfg.predicate);
      report.runs.push_back({c, res.run, res.guess, res.range,
                             res.sampled_distinct, res.sentinel});
      if (!res.sentinel && copy.chosen_run < 0) {
        copy.sentinel = false;
        copy.chosen_run = res.run;
        copy.alpha_hat = res.alpha_hat;
        copy.z_hat = res.z_hat;
      }
    }
    if (copy.alpha_hat) alpha_values.push_back(*copy.alpha_hat);
    if (copy.z_hat) z_values.push_back(*copy.z_hat);
    report.copies.push_back(std::move(copy));
  }

  if (!alpha_values.empty()) report.alpha_hat = median(alpha_values);
  if (!z_values.empty()) report.z_hat = median(z_values);
  const int valid = static_cast<int>(alpha_values.size());
  if (valid >= (copies + 1) / 2 && report.alpha_hat && report.z_hat) {
    report.f_hat = *report.alpha_hat * *report.z_hat;
  }
  return report;
}

EstimateReport estimate_frequent_itemsets(const std::vector<BSet>& transactions,
                                          const EstimatorConfig& cfg) {
  cfg.validate();
  std::size_t next = 0;
  auto stream = [&]() -> std::optional<SampleFn> {
    if (next == transactions.size()) return std::nullopt;
    const std::size_t i = next++;
    const BSet& t = transactions[i];
    if (cfg.b_max > 0 && t.size() > cfg.b_max) {
      throw IngestError(i + 1, "transaction has " + std::to_string(t.size()) +
                                   " elements, declared bound is " +
                                   std::to_string(cfg.b_max));
    }
    if (i >= cfg.m) {
      throw IngestError(i + 1, "stream longer than the declared length m = " +
                                   std::to_string(cfg.m));
    }
    const int k = cfg.k;
    return SampleFn([&t, k](const HashFunction& h) {
      return sample_bset(t, h, k);
    });
  };
  return run_sampling_estimators(stream, cfg);
}

std::unordered_map<Subset, std::uint64_t, SubsetHasher> exact_frequency_table(
    const std::vector<BSet>& transactions, int k, std::uint64_t cap) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  std::unordered_map<Subset, std::uint64_t, SubsetHasher> table;
  for (const BSet& t : transactions) {
    for_each_combination(t.elements(), k, [&](std::span<const element_t> c) {
      ++table[Subset::trusted(std::vector<element_t>(c.begin(), c.end()))];
      if (table.size() > cap) {
        throw std::length_error("distinct k-subset count exceeds the oracle cap");
      }
    });
  }
  return table;
}

ExactCounts exact_count_oracle(const std::vector<BSet>& transactions, int k,
                               const Predicate& predicate, std::uint64_t cap) {
  const auto table = exact_frequency_table(transactions, k, cap);
  ExactCounts counts;
  counts.distinct = table.size();
  for (const auto& [subset, freq] : table) {
    if (predicate(subset, freq)) ++counts.interesting;
  }
  return counts;
}

}  // namespace css
