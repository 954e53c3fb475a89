#pragma once
// Consistent subset sampling.
//
// A k-subset of a ground set is sampled when the hashes of its two canonical
// halves collide (see hashing.hpp).  Instead of testing all C(b, k) subsets,
// sample_bset enumerates the half-subsets of each size in ascending order of
// hash value and emits the collisions.  The enumerator splits a half-subset
// of size s once more into head (first ceil(s/2) elements) and tail (last
// floor(s/2) elements): the tails are materialized once, sorted by hash, and
// a priority queue holds at most one live (head, tail-position) pair per
// head, so live state stays near C(b, ceil(s/2)) + C(b, floor(s/2)) instead
// of C(b, s).
//
// Per head, walking the sorted tail list circularly from the wrap point of
// (head_hash + tail_hash) mod q yields values in nondecreasing order, which
// makes the whole stream a k-way merge.  Groups of equal value are returned
// as index intervals into the tail list (one per head), never materialized
// until expand() is called.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cssample/common.hpp"
#include "cssample/hashing.hpp"
#include "cssample/subset.hpp"

namespace css {

// One run of equal-valued half-subsets per head: `length` consecutive tail
// positions starting at `start` (circularly, in walk order).  Runs may cover
// tails that fail the head < tail order filter; expansion skips those.
struct ValueGroup {
  struct Run {
    std::uint32_t head;
    std::uint32_t start;
    std::uint32_t length;
  };

  std::uint64_t value = 0;
  std::vector<Run> runs;

  bool empty() const { return runs.empty(); }
  // Implicit-representation footprint (two indices per head).
  std::size_t index_count() const { return runs.size() * 2; }
};

class HalfSubsetEnumerator {
 public:
  enum class Direction { ascending, descending };

  // Emits every half_size-subset of t exactly once, ordered by
  // (subset_hash + offset) mod q.  half_size may exceed |t| (empty stream)
  // and may be 0 (a single empty subset with value offset mod q).
  HalfSubsetEnumerator(const BSet& t, const HashFunction& h, int half_size,
                       std::uint64_t offset = 0,
                       Direction dir = Direction::ascending);

  bool exhausted() const { return heap_.empty(); }

  // Value of the next nonempty group.  Requires !exhausted().
  std::uint64_t peek_value() const;

  // Returns the group of half-subsets whose value equals `value` and advances
  // past it.  Values must be requested in walk order (ascending or descending
  // with the enumerator's direction); revisiting an already-passed value is
  // an error, while requesting a value with no members yields an empty group.
  ValueGroup output_next(std::uint64_t value);

  ValueGroup next_group() { return output_next(peek_value()); }

  // Materializes a group: every covered (head, tail) pair passing the
  // max(head) < min(tail) order filter, as full half-subsets.
  std::vector<Subset> expand(const ValueGroup& g) const;

  // Instrumentation.
  std::size_t list_size() const { return tails_.size(); }       // |L|
  std::size_t head_count() const { return heads_.size(); }
  std::size_t live_entries() const { return heap_.size(); }
  std::size_t peak_live_entries() const { return peak_live_; }
  int half_size() const { return half_size_; }
  int head_size() const { return (half_size_ + 1) / 2; }
  int tail_size() const { return half_size_ / 2; }

 private:
  struct Entry {
    std::uint64_t value;      // (head_value + tail hash) mod q at pos
    std::uint32_t head;
    std::uint32_t pos;        // current position in tails_
    std::uint32_t consumed;   // tail positions consumed so far, <= |L|
  };

  bool pops_before(const Entry& a, const Entry& b) const;
  std::uint64_t value_at(std::uint32_t head, std::uint32_t pos) const;
  bool order_ok(std::uint32_t head, std::uint32_t pos) const;
  std::uint32_t step(std::uint32_t pos) const;
  std::uint32_t start_position(std::uint64_t head_value) const;
  void push_entry(Entry e);
  Entry pop_entry();

  const HashFunction* h_;
  std::uint64_t q_;
  int half_size_;
  Direction dir_;

  std::vector<std::vector<element_t>> heads_;
  std::vector<std::uint64_t> head_value_;       // (hash(head) + offset) mod q
  std::vector<std::vector<element_t>> tails_;   // sorted by (hash, elements)
  std::vector<std::uint64_t> tail_hash_;

  std::vector<Entry> heap_;
  std::size_t peak_live_ = 0;
  std::int64_t cursor_;  // next admissible request value (walk order)
};

// All half_size-subsets of t with their hash values, ordered by value.
std::vector<std::pair<Subset, std::uint64_t>> enumerate_sorted_halves(
    const BSet& t, const HashFunction& h, int half_size);

// Drives two ascending enumerators over their merged value frontier and
// invokes fn(a, b) for every pair of half-subsets with equal values.  When
// pair_attempts is non-null it accumulates |group_a| * |group_b| per value,
// before any ordering filter applied by fn.
template <typename F>
void for_each_value_collision(HalfSubsetEnumerator& a, HalfSubsetEnumerator& b,
                              std::uint64_t* pair_attempts, F&& fn) {
  while (!a.exhausted() && !b.exhausted()) {
    const std::uint64_t v = std::min(a.peek_value(), b.peek_value());
    const ValueGroup ga = a.output_next(v);
    const ValueGroup gb = b.output_next(v);
    if (ga.empty() || gb.empty()) continue;
    const auto as = a.expand(ga);
    const auto bs = b.expand(gb);
    if (pair_attempts) {
      *pair_attempts += static_cast<std::uint64_t>(as.size()) * bs.size();
    }
    for (const auto& sa : as) {
      for (const auto& sb : bs) fn(sa, sb);
    }
  }
}

struct SampleStats {
  // (A, B) half-subset combinations attempted before ordering filters.
  std::uint64_t pair_attempts = 0;
  // Enumerator bounds observed across the call (maxima over all enumerators
  // of the same role).
  std::size_t left_list_size = 0;
  std::size_t right_list_size = 0;
  std::size_t left_peak_live = 0;
  std::size_t right_peak_live = 0;
};

// Every k-subset of t whose canonical halves collide, sorted.  |t| < k gives
// an empty result.
std::vector<Subset> sample_bset(const BSet& t, const HashFunction& h, int k,
                                SampleStats* stats = nullptr);

// Time/space trade-off: fixes the ell largest elements of each half and runs
// the collision search on the remaining inner halves against the fixed
// offset.  ell == 0 reduces to sample_bset; ell must not exceed floor(k/2).
std::vector<Subset> sample_bset_tradeoff(const BSet& t, const HashFunction& h,
                                         int k, int ell,
                                         SampleStats* stats = nullptr);

// Bucket hash of a full k-subset: sum of the two half hashes mod q (the sum,
// not the zero-difference sampling condition).  Equals subset_hash(h, s).
std::uint64_t bucket_hash(const HashFunction& h, const Subset& s);

// Every k-subset of t whose bucket hash lies in [lo, lo + len), sorted.
// Implemented as an ascending enumerator over left halves paired with a
// descending enumerator over right halves through a sliding value window.
// Requires lo < q and 1 <= len <= q - lo.
std::vector<Subset> sample_bset_range(const BSet& t, const HashFunction& h,
                                      int k, std::uint64_t lo,
                                      std::uint64_t len,
                                      SampleStats* stats = nullptr);

// Naive baselines: test every C(|t|, k) subset directly.
std::vector<Subset> brute_force_sample(const BSet& t, const HashFunction& h,
                                       int k);
std::vector<Subset> brute_force_sample_range(const BSet& t,
                                             const HashFunction& h, int k,
                                             std::uint64_t lo,
                                             std::uint64_t len);

}  // namespace css
