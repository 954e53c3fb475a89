#pragma once
// Polynomial hashing over the 61-bit Mersenne field, reduced mod q, plus the
// additive subset-hash extension and the split-half sampling condition.
//
// A degree-(2k-1) polynomial with uniform coefficients over GF(2^61 - 1)
// makes the element hashes 2k-wise independent; this is exactly the
// independence needed so that whether a fixed k-subset satisfies the
// sampling condition is a pairwise-independent event across subsets.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cssample/common.hpp"
#include "cssample/subset.hpp"

namespace css {

class HashFunction {
 public:
  virtual ~HashFunction() = default;

  // Hash of one element, in [0, range()).  Requires x < 2^61 - 1.
  virtual std::uint64_t eval(element_t x) const = 0;

  std::uint64_t range() const { return q_; }

 protected:
  explicit HashFunction(std::uint64_t q);

  std::uint64_t q_;
};

class PolynomialHash final : public HashFunction {
 public:
  // Coefficients are drawn uniformly from [0, 2^61 - 1) by a SplitMix64
  // stream seeded with `seed`; equal (seed, k, q) always yields equal
  // functions.
  PolynomialHash(std::uint64_t seed, int k, std::uint64_t q);

  // Test constructor with explicit coefficients (all-zero gives eval == 0).
  static PolynomialHash with_coefficients(std::vector<std::uint64_t> coeffs,
                                          std::uint64_t q);

  std::uint64_t eval(element_t x) const override;

  int degree() const { return static_cast<int>(coeffs_.size()); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }

 private:
  PolynomialHash(std::vector<std::uint64_t> coeffs, std::uint64_t q);

  std::vector<std::uint64_t> coeffs_;  // c_0 .. c_{2k-1}
  std::uint64_t seed_ = 0;
};

PolynomialHash make_hash(std::uint64_t seed, int k, std::uint64_t q);

// Table-backed stand-in with hand-picked values for worked examples; elements
// absent from the table hash to 0.  Test surface only.
class TableHash final : public HashFunction {
 public:
  TableHash(std::uint64_t q, std::unordered_map<element_t, std::uint64_t> values);

  std::uint64_t eval(element_t x) const override;

 private:
  std::unordered_map<element_t, std::uint64_t> values_;
};

// Sum of element hashes mod q; 0 for the empty set.
std::uint64_t subset_hash(const HashFunction& h, std::span<const element_t> elems);

inline std::uint64_t subset_hash(const HashFunction& h, const Subset& s) {
  return subset_hash(h, s.elements());
}

// Zero-difference condition on the canonical split: the hash of the first
// floor(|s|/2) elements equals the hash of the remaining ceil(|s|/2).
bool sampling_condition(const HashFunction& h, const Subset& s);

// As above, but rejects subsets whose size is not exactly k.
bool sampling_condition(const HashFunction& h, const Subset& s, int k);

}  // namespace css
