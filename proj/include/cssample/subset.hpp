#pragma once
// Ordered-set value types.
//
// Subset is a strictly increasing vector of element ids with the canonical
// half split used throughout the sampler: left half = first floor(n/2)
// elements, right half = the remaining ceil(n/2).  BSet is one ingested
// ground set (a transaction or an incidence list); arbitrary input is sorted
// and deduplicated on construction.

#include <cassert>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "cssample/common.hpp"

namespace css {

class Subset {
 public:
  Subset() = default;

  // Validates strict ascending order.
  static Subset checked(std::vector<element_t> elems);

  // Sorts and removes duplicates.
  static Subset sorted_unique(std::vector<element_t> elems);

  // Fast path for enumeration internals; order is asserted in debug builds.
  static Subset trusted(std::vector<element_t> elems) {
    assert(is_strictly_sorted(elems));
    Subset s;
    s.elems_ = std::move(elems);
    return s;
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  element_t operator[](std::size_t i) const { return elems_[i]; }
  element_t front() const { return elems_.front(); }
  element_t back() const { return elems_.back(); }

  std::span<const element_t> elements() const { return elems_; }
  std::span<const element_t> left_half() const {
    return elements().first(elems_.size() / 2);
  }
  std::span<const element_t> right_half() const {
    return elements().subspan(elems_.size() / 2);
  }

  const std::vector<element_t>& vec() const { return elems_; }

  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  static bool is_strictly_sorted(const std::vector<element_t>& v);

  std::vector<element_t> elems_;
};

struct SubsetHasher {
  std::size_t operator()(const Subset& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (element_t e : s.elements()) {
      for (int i = 0; i < 8; ++i) {
        h ^= (e >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

// Concatenation of two ordered, element-wise separated subsets
// (max(a) < min(b)); the result is sorted by construction.
Subset concat_ordered(const Subset& a, const Subset& b);

class BSet {
 public:
  BSet() = default;
  explicit BSet(std::vector<element_t> raw);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  element_t operator[](std::size_t i) const { return elems_[i]; }
  std::span<const element_t> elements() const { return elems_; }
  const std::vector<element_t>& vec() const { return elems_; }
  bool contains(element_t e) const;

  friend auto operator<=>(const BSet&, const BSet&) = default;

 private:
  std::vector<element_t> elems_;
};

}  // namespace css
