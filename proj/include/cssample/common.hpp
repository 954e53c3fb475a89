#pragma once
// Scalar types, deterministic seeding, and small combinatorics helpers shared
// across the library.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace css {

using element_t = std::uint64_t;

// 61-bit Mersenne prime: coefficient field for polynomial hashing.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// Largest admissible hash range. Reducing a value uniform on [0, 2^61 - 1)
// further mod q is biased by at most q / 2^61; capping q here keeps that
// relative bias below 2^-20.
inline constexpr std::uint64_t kMaxHashRange = kMersenne61 >> 20;

// Splittable deterministic generator (SplitMix64, reference constants).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t mix64(std::uint64_t x) {
  return SplitMix64(x).next();
}

// Deterministic sub-seed for fan-out structures; (a, b) is typically
// (amplification copy, parallel run) or (sketch row, role).
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                           std::uint64_t b) {
  return mix64(mix64(master ^ mix64(a + 1)) ^ mix64(b + 0x517cc1b727220a95ULL));
}

// Binomial coefficient, saturating at UINT64_MAX instead of overflowing.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;  // exact: i! divides any i consecutive integers
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Invokes fn(span) for every size-r subset of pool, in lexicographic order of
// index tuples. r == 0 yields exactly one empty span.
template <typename F>
void for_each_combination(std::span<const element_t> pool, int r, F&& fn) {
  if (r < 0) throw std::invalid_argument("combination size must be >= 0");
  const std::size_t rr = static_cast<std::size_t>(r);
  const std::size_t n = pool.size();
  if (rr > n) return;
  std::vector<element_t> combo(rr);
  std::vector<std::size_t> idx(rr);
  for (std::size_t i = 0; i < rr; ++i) idx[i] = i;
  while (true) {
    for (std::size_t i = 0; i < rr; ++i) combo[i] = pool[idx[i]];
    fn(std::span<const element_t>(combo));
    std::size_t i = rr;
    while (i > 0 && idx[i - 1] == n - rr + (i - 1)) --i;
    if (i == 0) break;
    --i;
    ++idx[i];
    for (std::size_t j = i + 1; j < rr; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Input that could not be tokenized; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that violates a declared bound (size, degree, length).
class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// FNV-1a, used for input digests and hash-table keys.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace css
