#include "cssample/sampler.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace css {

HalfSubsetEnumerator::HalfSubsetEnumerator(const BSet& t, const HashFunction& h,
                                           int half_size, std::uint64_t offset,
                                           Direction dir)
    : h_(&h), q_(h.range()), half_size_(half_size), dir_(dir) {
  if (half_size < 0) throw std::invalid_argument("half_size must be >= 0");
  offset %= q_;

  for_each_combination(t.elements(), head_size(),
                       [&](std::span<const element_t> c) {
                         heads_.emplace_back(c.begin(), c.end());
                       });

  std::vector<std::pair<std::uint64_t, std::vector<element_t>>> tails;
  for_each_combination(t.elements(), tail_size(),
                       [&](std::span<const element_t> c) {
                         tails.emplace_back(subset_hash(h, c),
                                            std::vector<element_t>(c.begin(), c.end()));
                       });
  std::sort(tails.begin(), tails.end());
  tails_.reserve(tails.size());
  tail_hash_.reserve(tails.size());
  for (auto& [hv, elems] : tails) {
    tail_hash_.push_back(hv);
    tails_.push_back(std::move(elems));
  }
  if (heads_.size() > 0xffffffffu || tails_.size() > 0xffffffffu) {
    throw std::length_error("ground set too large for the enumerator");
  }

  head_value_.reserve(heads_.size());
  for (const auto& hd : heads_) {
    head_value_.push_back((subset_hash(h, hd) + offset) % q_);
  }

  cursor_ = dir_ == Direction::ascending ? 0 : static_cast<std::int64_t>(q_) - 1;

  const auto L = static_cast<std::uint32_t>(tails_.size());
  if (L == 0) return;
  for (std::uint32_t i = 0; i < heads_.size(); ++i) {
    Entry e{0, i, start_position(head_value_[i]), 0};
    while (e.consumed < L && !order_ok(i, e.pos)) {
      ++e.consumed;
      e.pos = step(e.pos);
    }
    if (e.consumed == L) continue;  // no admissible tail for this head
    e.value = value_at(i, e.pos);
    push_entry(e);
  }
}

bool HalfSubsetEnumerator::pops_before(const Entry& a, const Entry& b) const {
  if (a.value != b.value) {
    return dir_ == Direction::ascending ? a.value < b.value : a.value > b.value;
  }
  if (a.head != b.head) return a.head < b.head;
  return a.pos < b.pos;
}

std::uint64_t HalfSubsetEnumerator::value_at(std::uint32_t head,
                                             std::uint32_t pos) const {
  return (head_value_[head] + tail_hash_[pos]) % q_;
}

bool HalfSubsetEnumerator::order_ok(std::uint32_t head, std::uint32_t pos) const {
  const auto& hd = heads_[head];
  const auto& tl = tails_[pos];
  return hd.empty() || tl.empty() || hd.back() < tl.front();
}

std::uint32_t HalfSubsetEnumerator::step(std::uint32_t pos) const {
  const auto L = static_cast<std::uint32_t>(tails_.size());
  if (dir_ == Direction::ascending) return pos + 1 == L ? 0 : pos + 1;
  return pos == 0 ? L - 1 : pos - 1;
}

std::uint32_t HalfSubsetEnumerator::start_position(std::uint64_t head_value) const {
  if (dir_ == Direction::ascending) {
    // The smallest (head_value + tail) mod q sits at the first tail hash
    // >= q - head_value (wrapped segment); with no such tail nothing wraps
    // and position 0 holds the minimum.
    const std::uint64_t tau = head_value == 0 ? 0 : q_ - head_value;
    auto it = std::lower_bound(tail_hash_.begin(), tail_hash_.end(), tau);
    if (it == tail_hash_.end()) it = tail_hash_.begin();
    return static_cast<std::uint32_t>(it - tail_hash_.begin());
  }
  // Mirror image: the largest value sits at the last tail hash
  // <= q - 1 - head_value; with no such tail every value wraps and the
  // largest tail hash gives the maximum.
  const std::uint64_t tau = q_ - 1 - head_value;
  auto it = std::upper_bound(tail_hash_.begin(), tail_hash_.end(), tau);
  if (it == tail_hash_.begin()) {
    return static_cast<std::uint32_t>(tail_hash_.size() - 1);
  }
  return static_cast<std::uint32_t>(it - tail_hash_.begin() - 1);
}

void HalfSubsetEnumerator::push_entry(Entry e) {
  heap_.push_back(e);
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](const Entry& x, const Entry& y) { return pops_before(y, x); });
  peak_live_ = std::max(peak_live_, heap_.size());
}

HalfSubsetEnumerator::Entry HalfSubsetEnumerator::pop_entry() {
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](const Entry& x, const Entry& y) { return pops_before(y, x); });
  Entry e = heap_.back();
  heap_.pop_back();
  return e;
}

std::uint64_t HalfSubsetEnumerator::peek_value() const {
  if (heap_.empty()) throw std::out_of_range("enumerator exhausted");
  return heap_.front().value;
}

ValueGroup HalfSubsetEnumerator::output_next(std::uint64_t value) {
  if (value >= q_) throw std::invalid_argument("value outside [0, q)");
  const auto v = static_cast<std::int64_t>(value);
  const bool asc = dir_ == Direction::ascending;
  if (asc ? v < cursor_ : v > cursor_) {
    throw std::invalid_argument("output_next must be called in walk order");
  }
  ValueGroup g;
  g.value = value;
  const auto L = static_cast<std::uint32_t>(tails_.size());
  while (!heap_.empty() && heap_.front().value == value) {
    Entry e = pop_entry();
    const std::uint32_t run_start = e.pos;
    std::uint32_t run_len = 0;
    // Per-head values are monotone along the walk: the whole run of this
    // value is contiguous from the current position.
    while (e.consumed < L && value_at(e.head, e.pos) == value) {
      ++e.consumed;
      ++run_len;
      e.pos = step(e.pos);
    }
    g.runs.push_back({e.head, run_start, run_len});
    while (e.consumed < L && !order_ok(e.head, e.pos)) {
      ++e.consumed;
      e.pos = step(e.pos);
    }
    if (e.consumed < L) {
      e.value = value_at(e.head, e.pos);
      push_entry(e);
    }
  }
  cursor_ = asc ? v + 1 : v - 1;
  return g;
}

std::vector<Subset> HalfSubsetEnumerator::expand(const ValueGroup& g) const {
  std::vector<Subset> out;
  for (const auto& run : g.runs) {
    std::uint32_t pos = run.start;
    for (std::uint32_t i = 0; i < run.length; ++i) {
      if (order_ok(run.head, pos)) {
        const auto& hd = heads_[run.head];
        const auto& tl = tails_[pos];
        std::vector<element_t> full;
        full.reserve(hd.size() + tl.size());
        full.insert(full.end(), hd.begin(), hd.end());
        full.insert(full.end(), tl.begin(), tl.end());
        out.push_back(Subset::trusted(std::move(full)));
      }
      pos = step(pos);
    }
  }
  return out;
}

std::vector<std::pair<Subset, std::uint64_t>> enumerate_sorted_halves(
    const BSet& t, const HashFunction& h, int half_size) {
  if (half_size < 1) throw std::invalid_argument("half_size must be >= 1");
  HalfSubsetEnumerator e(t, h, half_size);
  std::vector<std::pair<Subset, std::uint64_t>> out;
  while (!e.exhausted()) {
    const std::uint64_t v = e.peek_value();
    for (auto& s : e.expand(e.next_group())) {
      out.emplace_back(std::move(s), v);
    }
  }
  return out;
}

namespace {

void note_enumerator(SampleStats* stats, const HalfSubsetEnumerator& e, bool left) {
  if (!stats) return;
  auto& list = left ? stats->left_list_size : stats->right_list_size;
  auto& peak = left ? stats->left_peak_live : stats->right_peak_live;
  list = std::max(list, e.list_size());
  peak = std::max(peak, e.peak_live_entries());
}

}  // namespace

std::vector<Subset> sample_bset(const BSet& t, const HashFunction& h, int k,
                                SampleStats* stats) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  std::vector<Subset> out;
  if (t.size() < static_cast<std::size_t>(k)) return out;
  const int left = k / 2;
  const int right = k - left;
  if (left == right) {
    HalfSubsetEnumerator e(t, h, left);
    while (!e.exhausted()) {
      const auto halves = e.expand(e.next_group());
      if (stats) {
        stats->pair_attempts +=
            static_cast<std::uint64_t>(halves.size()) * halves.size();
      }
      for (const auto& a : halves) {
        for (const auto& b : halves) {
          if (a.back() < b.front()) out.push_back(concat_ordered(a, b));
        }
      }
    }
    note_enumerator(stats, e, true);
    note_enumerator(stats, e, false);
  } else {
    HalfSubsetEnumerator el(t, h, left);
    HalfSubsetEnumerator er(t, h, right);
    for_each_value_collision(el, er, stats ? &stats->pair_attempts : nullptr,
                             [&](const Subset& a, const Subset& b) {
                               if (a.back() < b.front()) {
                                 out.push_back(concat_ordered(a, b));
                               }
                             });
    note_enumerator(stats, el, true);
    note_enumerator(stats, er, false);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> sample_bset_tradeoff(const BSet& t, const HashFunction& h,
                                         int k, int ell, SampleStats* stats) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (ell < 0 || ell > k / 2) {
    throw std::invalid_argument("ell must lie in [0, floor(k/2)]");
  }
  if (ell == 0) return sample_bset(t, h, k, stats);
  std::vector<Subset> out;
  if (t.size() < static_cast<std::size_t>(k)) return out;
  const int left = k / 2;
  const int right = k - left;
  const int inner_left = left - ell;
  const int inner_right = right - ell;
  const std::uint64_t q = h.range();
  const auto elems = t.elements();

  // The fixed parts are the ell largest elements of each half: F_l sits
  // directly above the inner left part, F_r above everything else.
  for_each_combination(elems, ell, [&](std::span<const element_t> fl) {
    const std::uint64_t hfl = subset_hash(h, fl);
    const auto* upper_begin =
        std::upper_bound(elems.data(), elems.data() + elems.size(), fl.back());
    const std::span<const element_t> upper(upper_begin,
                                           elems.data() + elems.size());
    for_each_combination(upper, ell, [&](std::span<const element_t> fr) {
      const std::uint64_t hfr = subset_hash(h, fr);
      // Collision target: hash(innerL) - hash(innerR) == hash(F_r) - hash(F_l)
      // (mod q), folded into the right enumerator as an additive offset.
      const std::uint64_t offs = (hfr + q - hfl) % q;
      const auto* low_end =
          std::lower_bound(elems.data(), elems.data() + elems.size(), fl.front());
      const auto* win_begin =
          std::upper_bound(elems.data(), elems.data() + elems.size(), fl.back());
      const auto* win_end =
          std::lower_bound(elems.data(), elems.data() + elems.size(), fr.front());
      BSet low(std::vector<element_t>(elems.data(), low_end));
      BSet window(std::vector<element_t>(win_begin, win_end));
      if (low.size() < static_cast<std::size_t>(inner_left) ||
          window.size() < static_cast<std::size_t>(inner_right)) {
        return;
      }
      HalfSubsetEnumerator el(low, h, inner_left);
      HalfSubsetEnumerator er(window, h, inner_right, offs);
      for_each_value_collision(
          el, er, stats ? &stats->pair_attempts : nullptr,
          [&](const Subset& a, const Subset& b) {
            std::vector<element_t> full;
            full.reserve(static_cast<std::size_t>(k));
            full.insert(full.end(), a.elements().begin(), a.elements().end());
            full.insert(full.end(), fl.begin(), fl.end());
            full.insert(full.end(), b.elements().begin(), b.elements().end());
            full.insert(full.end(), fr.begin(), fr.end());
            out.push_back(Subset::trusted(std::move(full)));
          });
      note_enumerator(stats, el, true);
      note_enumerator(stats, er, false);
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t bucket_hash(const HashFunction& h, const Subset& s) {
  return (subset_hash(h, s.left_half()) + subset_hash(h, s.right_half())) %
         h.range();
}

std::vector<Subset> sample_bset_range(const BSet& t, const HashFunction& h,
                                      int k, std::uint64_t lo, std::uint64_t len,
                                      SampleStats* stats) {
  const std::uint64_t q = h.range();
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (lo >= q || len < 1 || len > q - lo) {
    throw std::invalid_argument(
        "bucket range [lo, lo+len) must be a nonempty subinterval of [0, q)");
  }
  std::vector<Subset> out;
  if (t.size() < static_cast<std::size_t>(k)) return out;
  const int left = k / 2;
  const int right = k - left;

  // Bucket values are (a + b) mod q for half hashes a, b in [0, q); the plain
  // sum lies either in [lo, lo+len) or in its shift by q.  Each window gets
  // one monotone pass: as the left value a ascends, the admissible right
  // interval [w_lo - a, w_hi - a) descends, which a descending right
  // enumerator feeds through a sliding window of implicit groups.
  for (int pass = 0; pass < 2; ++pass) {
    const std::int64_t w_lo =
        static_cast<std::int64_t>(lo) + (pass ? static_cast<std::int64_t>(q) : 0);
    const std::int64_t w_hi = w_lo + static_cast<std::int64_t>(len);
    if (w_lo > 2 * (static_cast<std::int64_t>(q) - 1)) continue;

    HalfSubsetEnumerator el(t, h, left);
    HalfSubsetEnumerator er(t, h, right, 0,
                            HalfSubsetEnumerator::Direction::descending);
    std::map<std::uint64_t, ValueGroup> window;
    while (!el.exhausted()) {
      const std::uint64_t a = el.peek_value();
      const std::int64_t bh = std::min<std::int64_t>(
          static_cast<std::int64_t>(q), w_hi - static_cast<std::int64_t>(a));
      if (bh <= 0) break;  // larger a can only push the interval lower
      const ValueGroup ga = el.next_group();
      const std::int64_t bl = std::max<std::int64_t>(
          std::int64_t{0}, w_lo - static_cast<std::int64_t>(a));
      if (bl >= bh) continue;  // sums from this a fall outside the window
      const auto as = el.expand(ga);
      if (as.empty()) continue;

      window.erase(window.lower_bound(static_cast<std::uint64_t>(bh)),
                   window.end());
      while (!er.exhausted() &&
             static_cast<std::int64_t>(er.peek_value()) >= bl) {
        const std::uint64_t b = er.peek_value();
        ValueGroup gb = er.next_group();
        if (static_cast<std::int64_t>(b) < bh && !gb.empty()) {
          window.emplace(b, std::move(gb));
        }
      }
      for (auto it = window.lower_bound(static_cast<std::uint64_t>(bl));
           it != window.end(); ++it) {
        const auto bs = er.expand(it->second);
        if (stats) {
          stats->pair_attempts +=
              static_cast<std::uint64_t>(as.size()) * bs.size();
        }
        for (const auto& a_half : as) {
          for (const auto& b_half : bs) {
            if (a_half.back() < b_half.front()) {
              out.push_back(concat_ordered(a_half, b_half));
            }
          }
        }
      }
    }
    note_enumerator(stats, el, true);
    note_enumerator(stats, er, false);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> brute_force_sample(const BSet& t, const HashFunction& h,
                                       int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  std::vector<Subset> out;
  for_each_combination(t.elements(), k, [&](std::span<const element_t> c) {
    Subset s = Subset::trusted(std::vector<element_t>(c.begin(), c.end()));
    if (sampling_condition(h, s)) out.push_back(std::move(s));
  });
  return out;
}

std::vector<Subset> brute_force_sample_range(const BSet& t,
                                             const HashFunction& h, int k,
                                             std::uint64_t lo,
                                             std::uint64_t len) {
  const std::uint64_t q = h.range();
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (lo >= q || len < 1 || len > q - lo) {
    throw std::invalid_argument(
        "bucket range [lo, lo+len) must be a nonempty subinterval of [0, q)");
  }
  std::vector<Subset> out;
  for_each_combination(t.elements(), k, [&](std::span<const element_t> c) {
    Subset s = Subset::trusted(std::vector<element_t>(c.begin(), c.end()));
    const std::uint64_t b = bucket_hash(h, s);
    if (b >= lo && b - lo < len) out.push_back(std::move(s));
  });
  return out;
}

}  // namespace css
