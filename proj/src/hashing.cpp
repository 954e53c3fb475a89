#include "cssample/hashing.hpp"

#include <stdexcept>
#include <string>

namespace css {
namespace {

// a * b mod (2^61 - 1) via 128-bit product and Mersenne folding.
inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(z & kMersenne61) +
                    static_cast<std::uint64_t>(z >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

inline std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;  // both < 2^61, no overflow
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

void check_range(std::uint64_t q) {
  if (q < 1 || q > kMaxHashRange) {
    throw std::invalid_argument(
        "hash range q = " + std::to_string(q) + " outside [1, " +
        std::to_string(kMaxHashRange) +
        "]; the mod-q bias bound q/2^61 must stay below 2^-20");
  }
}

}  // namespace

HashFunction::HashFunction(std::uint64_t q) : q_(q) { check_range(q); }

PolynomialHash::PolynomialHash(std::uint64_t seed, int k, std::uint64_t q)
    : HashFunction(q), seed_(seed) {
  if (k < 1) throw std::invalid_argument("independence parameter k must be >= 1");
  coeffs_.resize(2 * static_cast<std::size_t>(k));
  SplitMix64 gen(seed);
  for (auto& c : coeffs_) {
    // Rejection sampling of a uniform value in [0, 2^61 - 1).
    do {
      c = gen.next() >> 3;
    } while (c >= kMersenne61);
  }
}

PolynomialHash::PolynomialHash(std::vector<std::uint64_t> coeffs, std::uint64_t q)
    : HashFunction(q), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("coefficient vector is empty");
  for (std::uint64_t c : coeffs_) {
    if (c >= kMersenne61) {
      throw std::invalid_argument("coefficient outside [0, 2^61 - 1)");
    }
  }
}

PolynomialHash PolynomialHash::with_coefficients(std::vector<std::uint64_t> coeffs,
                                                 std::uint64_t q) {
  return PolynomialHash(std::move(coeffs), q);
}

std::uint64_t PolynomialHash::eval(element_t x) const {
  if (x >= kMersenne61) {
    throw std::invalid_argument("element id must be below 2^61 - 1");
  }
  // Horner on c_{d-1} x^{d-1} + ... + c_0, all over GF(2^61 - 1).
  std::uint64_t acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc = addmod61(mulmod61(acc, x), coeffs_[i]);
  }
  return acc % q_;
}

PolynomialHash make_hash(std::uint64_t seed, int k, std::uint64_t q) {
  return PolynomialHash(seed, k, q);
}

TableHash::TableHash(std::uint64_t q,
                     std::unordered_map<element_t, std::uint64_t> values)
    : HashFunction(q), values_(std::move(values)) {
  for (const auto& [e, v] : values_) {
    (void)e;
    if (v >= q_) throw std::invalid_argument("table value outside [0, q)");
  }
}

std::uint64_t TableHash::eval(element_t x) const {
  auto it = values_.find(x);
  return it == values_.end() ? 0 : it->second;
}

std::uint64_t subset_hash(const HashFunction& h, std::span<const element_t> elems) {
  std::uint64_t acc = 0;
  const std::uint64_t q = h.range();
  for (element_t e : elems) acc = (acc + h.eval(e)) % q;
  return acc;
}

bool sampling_condition(const HashFunction& h, const Subset& s) {
  if (s.size() < 2) {
    throw std::invalid_argument("sampling condition needs a subset of size >= 2");
  }
  return subset_hash(h, s.left_half()) == subset_hash(h, s.right_half());
}

bool sampling_condition(const HashFunction& h, const Subset& s, int k) {
  if (k < 2 || s.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("subset size does not match k");
  }
  return sampling_condition(h, s);
}

}  // namespace css
