#include "cssample/sketch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cssample/sampler.hpp"

namespace css {

PartitionedSketch::PartitionedSketch(SketchKind kind, int depth,
                                     std::uint64_t width, int workers, int k,
                                     std::uint64_t seed)
    : kind_(kind), depth_(depth), width_(width), workers_(workers), k_(k) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (width == 0 || width % static_cast<std::uint64_t>(workers) != 0) {
    throw std::invalid_argument("workers must divide width");
  }
  row_hash_.reserve(static_cast<std::size_t>(depth));
  sign_hash_.reserve(static_cast<std::size_t>(depth));
  for (int row = 0; row < depth; ++row) {
    const auto r = static_cast<std::uint64_t>(row);
    row_hash_.push_back(make_hash(derive_seed(seed, r, 0), k, width));
    sign_hash_.push_back(make_hash(derive_seed(seed, r, 1), 1, 2));
  }
  counters_.assign(static_cast<std::size_t>(depth) * width, 0);
}

std::pair<std::uint64_t, std::uint64_t> PartitionedSketch::range_of(
    int worker) const {
  if (worker < 0 || worker >= workers_) {
    throw std::out_of_range("worker index out of range");
  }
  const std::uint64_t t = width_ / static_cast<std::uint64_t>(workers_);
  return {static_cast<std::uint64_t>(worker) * t, t};
}

std::int64_t PartitionedSketch::increment_for(int row,
                                              const Subset& itemset) const {
  return kind_ == SketchKind::count_min ? 1 : sign_of(row, itemset);
}

void PartitionedSketch::worker_update(int worker, const BSet& transaction) {
  const auto [lo, len] = range_of(worker);
  for (int row = 0; row < depth_; ++row) {
    const auto sampled =
        sample_bset_range(transaction, row_hash_[row], k_, lo, len);
    const std::size_t base = static_cast<std::size_t>(row) * width_;
    for (const Subset& s : sampled) {
      counters_[base + bucket_hash(row_hash_[row], s)] += increment_for(row, s);
    }
  }
}

void PartitionedSketch::update_all(const BSet& transaction) {
  for (int w = 0; w < workers_; ++w) worker_update(w, transaction);
}

void PartitionedSketch::reference_update(const BSet& transaction) {
  for (int row = 0; row < depth_; ++row) {
    const std::size_t base = static_cast<std::size_t>(row) * width_;
    for_each_combination(transaction.elements(), k_,
                         [&](std::span<const element_t> c) {
      const Subset s = Subset::trusted(std::vector<element_t>(c.begin(),
                                                              c.end()));
      counters_[base + bucket_hash(row_hash_[row], s)] += increment_for(row, s);
    });
  }
}

std::int64_t PartitionedSketch::query_frequency(const Subset& itemset) const {
  if (static_cast<int>(itemset.size()) != k_) {
    throw std::invalid_argument("query itemset must have exactly " +
                                std::to_string(k_) + " elements");
  }
  std::vector<std::int64_t> row_values;
  row_values.reserve(static_cast<std::size_t>(depth_));
  for (int row = 0; row < depth_; ++row) {
    const std::size_t base = static_cast<std::size_t>(row) * width_;
    const std::int64_t c = counters_[base + bucket_of(row, itemset)];
    row_values.push_back(kind_ == SketchKind::count_min
                             ? c
                             : sign_of(row, itemset) * c);
  }
  if (kind_ == SketchKind::count_min) {
    return *std::min_element(row_values.begin(), row_values.end());
  }
  std::sort(row_values.begin(), row_values.end());
  const std::size_t n = row_values.size();
  if (n % 2 == 1) return row_values[n / 2];
  return (row_values[n / 2 - 1] + row_values[n / 2]) / 2;
}

std::uint64_t PartitionedSketch::bucket_of(int row,
                                           const Subset& itemset) const {
  if (row < 0 || row >= depth_) throw std::out_of_range("row out of range");
  return bucket_hash(row_hash_[static_cast<std::size_t>(row)], itemset);
}

int PartitionedSketch::sign_of(int row, const Subset& itemset) const {
  if (row < 0 || row >= depth_) throw std::out_of_range("row out of range");
  std::uint64_t parity = 0;
  for (element_t e : itemset.elements()) {
    parity ^= sign_hash_[static_cast<std::size_t>(row)].eval(e);
  }
  return parity == 0 ? 1 : -1;
}

}  // namespace css
