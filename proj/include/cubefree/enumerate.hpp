#pragma once

// Combinatorial enumeration helpers: multisets as non-decreasing sequences,
// fixed-size subsets, and binomial coefficients with saturation.

#include <cstdint>
#include <limits>
#include <vector>

namespace cubefree {

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// Number of multisets of size k drawn from `values` distinct values.
inline std::uint64_t multiset_count(std::uint64_t values, std::uint64_t k) {
  if (values == 0) return k == 0 ? 1 : 0;
  return binomial(values + k - 1, k);
}

/// Non-decreasing sequences of length `length` over [lo, hi], in lexicographic order.
///
///   for (NonDecreasingSequences seq(1, 7, 3); seq.valid(); seq.next()) use(seq.current());
class NonDecreasingSequences {
 public:
  NonDecreasingSequences(std::uint32_t lo, std::uint32_t hi, std::size_t length)
      : lo_(lo), hi_(hi), current_(length, lo), valid_(lo <= hi || length == 0) {}

  bool valid() const noexcept { return valid_; }
  const std::vector<std::uint32_t>& current() const noexcept { return current_; }

  void next() {
    std::size_t i = current_.size();
    while (i > 0 && current_[i - 1] == hi_) --i;
    if (i == 0) {
      valid_ = false;
      return;
    }
    const std::uint32_t v = current_[i - 1] + 1;
    for (std::size_t j = i - 1; j < current_.size(); ++j) current_[j] = v;
  }

 private:
  std::uint32_t lo_;
  std::uint32_t hi_;
  std::vector<std::uint32_t> current_;
  bool valid_;
};

/// Next k-subset bitmask of the same popcount (Gosper). Returns false after the last one.
inline bool next_combination(std::uint64_t& mask, unsigned universe) {
  const std::uint64_t c = mask & (~mask + 1);
  const std::uint64_t r = mask + c;
  if (r == 0) return false;
  const std::uint64_t next = (((r ^ mask) >> 2) / c) | r;
  if (universe < 64 && (next >> universe) != 0) return false;
  mask = next;
  return true;
}

}  // namespace cubefree
