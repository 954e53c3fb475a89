#include "cssample/subset.hpp"

#include <algorithm>
#include <stdexcept>

namespace css {

bool Subset::is_strictly_sorted(const std::vector<element_t>& v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](element_t a, element_t b) { return a >= b; }) ==
         v.end();
}

Subset Subset::checked(std::vector<element_t> elems) {
  if (!is_strictly_sorted(elems)) {
    throw std::invalid_argument(
        "subset elements must be strictly increasing and distinct");
  }
  Subset s;
  s.elems_ = std::move(elems);
  return s;
}

Subset Subset::sorted_unique(std::vector<element_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subset s;
  s.elems_ = std::move(elems);
  return s;
}

Subset concat_ordered(const Subset& a, const Subset& b) {
  assert(a.empty() || b.empty() || a.back() < b.front());
  std::vector<element_t> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.elements().begin(), a.elements().end());
  out.insert(out.end(), b.elements().begin(), b.elements().end());
  return Subset::trusted(std::move(out));
}

BSet::BSet(std::vector<element_t> raw) : elems_(std::move(raw)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool BSet::contains(element_t e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

}  // namespace css
