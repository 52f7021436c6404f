#pragma once

// Brute-force verifiers for statements about collections of residues
// modulo 2^{k+1}: zero-sum sub-collections, sub-collections summing to 2^k,
// families of disjoint zero-sum sub-collections, and the three compression
// operators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "cubefree/enumerate.hpp"
#include "cubefree/group.hpp"
#include "cubefree/sumset.hpp"

namespace cubefree {

using IndexSet = std::vector<std::size_t>;

/// A multiset of non-zero residues modulo 2^{k+1}, addressed by position.
class ResidueCollection {
 public:
  ResidueCollection(unsigned k, std::vector<Residue> elements) : k_(k), elements_(std::move(elements)) {
    if (k < 1 || k > 20) throw RangeError("k=" + std::to_string(k) + " outside [1, 20]");
    for (Residue x : elements_)
      if (x == 0 || x >= modulus())
        throw RangeError("element " + std::to_string(x) + " is not a non-zero residue mod " +
                         std::to_string(modulus()));
  }

  unsigned k() const noexcept { return k_; }
  Residue modulus() const noexcept { return Residue{1} << (k_ + 1); }
  Residue half() const noexcept { return Residue{1} << k_; }
  GroupContext context() const { return GroupContext(k_ + 1); }

  std::size_t size() const noexcept { return elements_.size(); }
  Residue operator[](std::size_t i) const { return elements_.at(i); }
  const std::vector<Residue>& elements() const noexcept { return elements_; }

  Residue sum_of(const IndexSet& idx) const {
    std::uint64_t s = 0;
    for (std::size_t i : idx) s += elements_.at(i);
    return static_cast<Residue>(s & (modulus() - 1));
  }

  /// C*, the set of all sub-collection sums including 0.
  ResidueSet iterated_sumset() const { return cubefree::iterated_sumset(context(), elements_); }

  /// Same elements, sorted; equality of collections as multisets.
  std::vector<Residue> sorted() const {
    std::vector<Residue> s = elements_;
    std::sort(s.begin(), s.end());
    return s;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? "," : "") + std::to_string(elements_[i]);
    return s + "} mod " + std::to_string(modulus());
  }

 private:
  unsigned k_;
  std::vector<Residue> elements_;
};

/// A non-empty run of positions whose values sum to 0 mod m, found by the
/// prefix-sum pigeonhole argument. Needs at least m values.
inline IndexSet zero_sum_subset(std::span<const std::int64_t> xs, std::uint64_t m) {
  if (m < 1) throw ArgumentError("modulus must be >= 1");
  if (xs.size() < m)
    throw ArgumentError("need at least " + std::to_string(m) + " values, got " + std::to_string(xs.size()));
  std::vector<std::int64_t> first_seen(m, -1);
  first_seen[0] = 0;
  std::uint64_t prefix = 0;
  const auto mm = static_cast<std::int64_t>(m);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    prefix = static_cast<std::uint64_t>(((static_cast<std::int64_t>(prefix) + xs[i]) % mm + mm) % mm);
    if (first_seen[prefix] >= 0) {
      IndexSet run;
      for (auto j = static_cast<std::size_t>(first_seen[prefix]); j <= i; ++j) run.push_back(j);
      return run;
    }
    first_seen[prefix] = static_cast<std::int64_t>(i + 1);
  }
  throw std::logic_error("pigeonhole failed");  // unreachable for xs.size() >= m
}

/// Positions of a sub-collection summing to 2^k mod 2^{k+1}, if one exists.
/// Subset-sum reachability with parent pointers; elements are taken in order.
inline std::optional<IndexSet> half_sum_subset(const ResidueCollection& c) {
  const Residue m = c.modulus();
  struct Parent {
    std::size_t element;
    Residue prev;
  };
  std::vector<std::optional<Parent>> parent(m);
  std::vector<bool> reach(m, false);
  reach[0] = true;
  std::vector<Residue> frontier{0};
  for (std::size_t j = 0; j < c.size(); ++j) {
    const std::size_t before = frontier.size();
    for (std::size_t f = 0; f < before; ++f) {
      const Residue s = frontier[f];
      const Residue t = (s + c[j]) & (m - 1);
      if (!reach[t]) {
        reach[t] = true;
        parent[t] = Parent{j, s};
        frontier.push_back(t);
      }
    }
    if (reach[c.half()]) break;
  }
  if (!reach[c.half()]) return std::nullopt;
  IndexSet out;
  for (Residue s = c.half(); s != 0; s = parent[s]->prev) out.push_back(parent[s]->element);
  std::sort(out.begin(), out.end());
  return out;
}

/// Pairwise disjoint non-empty index sets, each summing to 0 mod 2^{k+1}.
struct DisjointZeroCertificate {
  std::vector<IndexSet> parts;
};

namespace detail {

// Search over multiplicity vectors: counts[v] copies of residue v.
class DisjointZeroSearch {
 public:
  explicit DisjointZeroSearch(Residue modulus) : m_(modulus) {}

  // Appends `need` value-multisets to `parts` if they can be carved out of counts.
  bool find(std::vector<std::uint8_t>& counts, std::size_t need, std::vector<std::vector<Residue>>& parts) {
    if (need == 0) return true;
    Residue v = 1;
    while (v < m_ && counts[v] == 0) ++v;
    if (v == m_) return false;
    std::string key(counts.begin(), counts.end());
    key.push_back(static_cast<char>(need));
    if (failed_.count(key)) return false;

    // A part using a copy of v: zero-sum sub-multisets containing v.
    std::vector<Residue> part{v};
    --counts[v];
    if (extend(counts, v, v, part, need, parts)) return true;
    ++counts[v];

    // No part uses v.
    const std::uint8_t saved = counts[v];
    counts[v] = 0;
    const bool ok = find(counts, need, parts);
    counts[v] = saved;
    if (ok) return true;
    failed_.insert(std::move(key));
    return false;
  }

 private:
  // Grows `part` with residues >= from; on reaching sum 0 recurses on the rest.
  bool extend(std::vector<std::uint8_t>& counts, Residue from, Residue sum, std::vector<Residue>& part,
              std::size_t need, std::vector<std::vector<Residue>>& parts) {
    if (sum == 0) {
      parts.push_back(part);
      if (find(counts, need - 1, parts)) return true;
      parts.pop_back();
      return false;  // a minimal part never needs extending
    }
    if (part.size() >= m_) return false;  // zero-sum-free sequences are shorter than m
    for (Residue w = from; w < m_; ++w) {
      if (counts[w] == 0) continue;
      --counts[w];
      part.push_back(w);
      const bool ok = extend(counts, w, (sum + w) & (m_ - 1), part, need, parts);
      part.pop_back();
      ++counts[w];
      if (ok) return true;
    }
    return false;
  }

  Residue m_;
  std::unordered_set<std::string> failed_;
};

inline std::vector<std::uint8_t> multiplicities(const ResidueCollection& c) {
  std::vector<std::uint8_t> counts(c.modulus(), 0);
  for (Residue x : c.elements()) {
    if (counts[x] == 255) throw CapacityError("more than 255 copies of one residue");
    ++counts[x];
  }
  return counts;
}

}  // namespace detail

/// m pairwise-disjoint non-empty zero-sum sub-collections, if they exist.
/// Parts are listed by increasing smallest index.
inline std::optional<DisjointZeroCertificate> disjoint_zero_sets(const ResidueCollection& c, std::size_t m) {
  if (m < 1) throw ArgumentError("need at least one part");
  std::vector<std::uint8_t> counts = detail::multiplicities(c);
  detail::DisjointZeroSearch search(c.modulus());
  std::vector<std::vector<Residue>> value_parts;
  if (!search.find(counts, m, value_parts)) return std::nullopt;

  // Map value multisets back to positions, lowest free positions first.
  std::map<Residue, std::vector<std::size_t>> free_positions;
  for (std::size_t i = c.size(); i-- > 0;) free_positions[c[i]].push_back(i);
  DisjointZeroCertificate cert;
  for (const auto& vp : value_parts) {
    IndexSet idx;
    for (Residue v : vp) {
      idx.push_back(free_positions[v].back());
      free_positions[v].pop_back();
    }
    std::sort(idx.begin(), idx.end());
    cert.parts.push_back(std::move(idx));
  }
  std::sort(cert.parts.begin(), cert.parts.end(), [](const IndexSet& a, const IndexSet& b) { return a[0] < b[0]; });
  return cert;
}

/// Largest number of pairwise-disjoint zero-sum sub-collections.
inline std::size_t max_disjoint_zero_sets(const ResidueCollection& c) {
  std::size_t best = 0;
  while (best < c.size() && disjoint_zero_sets(c, best + 1)) ++best;
  return best;
}

/// True if the certificate's parts are disjoint, non-empty and zero-sum in c.
inline bool is_valid_certificate(const ResidueCollection& c, const DisjointZeroCertificate& cert) {
  std::vector<bool> used(c.size(), false);
  for (const IndexSet& part : cert.parts) {
    if (part.empty()) return false;
    for (std::size_t i : part) {
      if (i >= c.size() || used[i]) return false;
      used[i] = true;
    }
    if (c.sum_of(part) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Keylemma: given 2^k + x residues, either some sub-collection sums to 2^k
// mod 2^{k+1}, or there are x + 1 disjoint zero-sum sub-collections.

enum class KeylemmaOutcome { kHalfSum, kDisjointZeros, kCounterexample };

struct KeylemmaVerdict {
  KeylemmaOutcome outcome;
  std::optional<IndexSet> half_sum;
  std::optional<DisjointZeroCertificate> zeros;
};

inline KeylemmaVerdict keylemma_check_instance(const ResidueCollection& c) {
  const std::size_t base = std::size_t{1} << c.k();
  if (c.size() < base)
    throw ArgumentError("collection has " + std::to_string(c.size()) + " elements, fewer than 2^k = " +
                        std::to_string(base));
  const std::size_t x = c.size() - base;
  if (auto h = half_sum_subset(c)) return {KeylemmaOutcome::kHalfSum, std::move(h), std::nullopt};
  if (auto z = disjoint_zero_sets(c, x + 1)) return {KeylemmaOutcome::kDisjointZeros, std::nullopt, std::move(z)};
  return {KeylemmaOutcome::kCounterexample, std::nullopt, std::nullopt};
}

/// The same check for arbitrary integers: values are reduced mod 2^{k+1} and
/// every zero residue counts as a zero-sum part on its own.
inline KeylemmaOutcome keylemma_check_integers(unsigned k, std::span<const std::int64_t> values) {
  const std::size_t base = std::size_t{1} << k;
  if (values.size() < base) throw ArgumentError("fewer than 2^k values");
  const GroupContext ctx(k + 1);
  std::vector<Residue> nonzero;
  std::size_t zeros = 0;
  for (std::int64_t v : values) {
    const Residue r = ctx.reduce(v);
    if (r == 0)
      ++zeros;
    else
      nonzero.push_back(r);
  }
  const std::size_t need = values.size() - base + 1;
  const ResidueCollection c(k, nonzero);
  if (half_sum_subset(c)) return KeylemmaOutcome::kHalfSum;
  if (zeros >= need || disjoint_zero_sets(c, need - zeros)) return KeylemmaOutcome::kDisjointZeros;
  return KeylemmaOutcome::kCounterexample;
}

struct KeylemmaReport {
  unsigned k = 0;
  std::size_t x = 0;
  std::uint64_t space_size = 0;
  std::uint64_t checked = 0;
  std::uint64_t half_sum = 0;
  std::uint64_t disjoint_zeros = 0;
  std::vector<std::vector<Residue>> counterexamples;  // at most kMaxReported
  std::uint64_t counterexample_count = 0;

  static constexpr std::size_t kMaxReported = 16;
};

inline constexpr std::uint64_t kDefaultKeylemmaBudget = 100'000'000;

/// Every multiset of 2^k + x non-zero residues mod 2^{k+1}.
inline KeylemmaReport keylemma_verify_all(unsigned k, std::size_t x,
                                          std::uint64_t budget = kDefaultKeylemmaBudget) {
  if (k < 1 || k > 8) throw RangeError("k must lie in [1, 8]");
  const std::size_t size = (std::size_t{1} << k) + x;
  const Residue m = Residue{1} << (k + 1);
  KeylemmaReport report;
  report.k = k;
  report.x = x;
  report.space_size = multiset_count(m - 1, size);
  if (report.space_size > budget)
    throw CapacityError("keylemma space of " + std::to_string(report.space_size) + " multisets exceeds budget " +
                            std::to_string(budget),
                        report.space_size, budget);
  for (NonDecreasingSequences seq(1, m - 1, size); seq.valid(); seq.next()) {
    const ResidueCollection c(k, seq.current());
    ++report.checked;
    switch (keylemma_check_instance(c).outcome) {
      case KeylemmaOutcome::kHalfSum:
        ++report.half_sum;
        break;
      case KeylemmaOutcome::kDisjointZeros:
        ++report.disjoint_zeros;
        break;
      case KeylemmaOutcome::kCounterexample:
        ++report.counterexample_count;
        if (report.counterexamples.size() < KeylemmaReport::kMaxReported)
          report.counterexamples.push_back(seq.current());
        break;
    }
  }
  return report;
}

struct AlonFreimanReport {
  unsigned k = 0;
  std::uint64_t space_size = 0;
  std::uint64_t checked = 0;
  std::vector<std::vector<Residue>> failures;
};

/// Every multiset of 2^{k+1} - 1 non-zero residues mod 2^{k+1} has a sub-collection summing to 2^k.
inline AlonFreimanReport alon_freiman_verify_all(unsigned k, std::uint64_t budget = kDefaultKeylemmaBudget) {
  const Residue m = Residue{1} << (k + 1);
  AlonFreimanReport report;
  report.k = k;
  report.space_size = multiset_count(m - 1, m - 1);
  if (report.space_size > budget)
    throw CapacityError("space exceeds budget", report.space_size, budget);
  for (NonDecreasingSequences seq(1, m - 1, m - 1); seq.valid(); seq.next()) {
    ++report.checked;
    if (!half_sum_subset(ResidueCollection(k, seq.current()))) report.failures.push_back(seq.current());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Compressions

/// Type 1: replace the element at `index` (with 1 < |t| <= lambda + 1, where
/// lambda > 0 counts the copies of +-1) by |t| copies of 1 when t < 2^k, else
/// by |t| copies of -1.
struct Type1Site {
  std::size_t index;
};

/// Type 2: with -t present and two copies of 2^k - t, replace those two copies by two copies of -t.
struct Type2Site {
  Residue t;
};

/// Type 3: with at least 2^{k-1} copies of +-1, replace the elements u, v
/// (both in [(3/2) 2^{k-1}, 2^k - 1]) at the given positions by u - 2^k and v - 2^k.
struct Type3Site {
  std::size_t u_index;
  std::size_t v_index;
};

using CompressionSite = std::variant<Type1Site, Type2Site, Type3Site>;

namespace detail {
inline std::size_t count_plus_minus_one(const ResidueCollection& c, std::initializer_list<std::size_t> skip = {}) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    if (c[i] == 1 || c[i] == c.modulus() - 1) ++n;
  }
  return n;
}
}  // namespace detail

inline ResidueCollection compress(const ResidueCollection& c, const Type1Site& site) {
  if (site.index >= c.size()) throw InapplicableError("type 1: position out of range");
  const Residue t = c[site.index];
  const Residue abs_t = residue_abs(t, c.k());
  const std::size_t lambda = detail::count_plus_minus_one(c, {site.index});
  if (lambda == 0) throw InapplicableError("type 1: no copies of +-1");
  if (abs_t <= 1) throw InapplicableError("type 1: |t| must exceed 1");
  if (abs_t > lambda + 1) throw InapplicableError("type 1: |t| exceeds the number of +-1 copies plus one");
  std::vector<Residue> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i != site.index) out.push_back(c[i]);
  const Residue unit = t < c.half() ? Residue{1} : c.modulus() - 1;
  out.insert(out.end(), abs_t, unit);
  return ResidueCollection(c.k(), std::move(out));
}

inline ResidueCollection compress(const ResidueCollection& c, const Type2Site& site) {
  const Residue m = c.modulus();
  const Residue t = site.t & (m - 1);
  const Residue neg_t = (m - t) & (m - 1);
  const Residue partner = (c.half() + m - t) & (m - 1);  // 2^k - t
  if (neg_t == 0 || partner == 0) throw InapplicableError("type 2: -t and 2^k - t must be non-zero");
  const auto& e = c.elements();
  if (std::count(e.begin(), e.end(), neg_t) < 1) throw InapplicableError("type 2: -t is missing");
  if (std::count(e.begin(), e.end(), partner) < 2) throw InapplicableError("type 2: fewer than two copies of 2^k - t");
  std::vector<Residue> out = e;
  int replaced = 0;
  for (Residue& x : out)
    if (x == partner && replaced < 2) {
      x = neg_t;
      ++replaced;
    }
  return ResidueCollection(c.k(), std::move(out));
}

inline ResidueCollection compress(const ResidueCollection& c, const Type3Site& site) {
  if (c.k() < 2) throw InapplicableError("type 3: needs k >= 2");
  if (site.u_index >= c.size() || site.v_index >= c.size() || site.u_index == site.v_index)
    throw InapplicableError("type 3: u and v must be two distinct positions");
  const Residue lo = 3 * (c.half() / 4);  // (3/2) 2^{k-1}
  const Residue hi = c.half() - 1;
  for (std::size_t i : {site.u_index, site.v_index})
    if (c[i] < lo || c[i] > hi) throw InapplicableError("type 3: u and v must lie in [(3/2)2^(k-1), 2^k - 1]");
  if (detail::count_plus_minus_one(c, {site.u_index, site.v_index}) < c.half() / 2)
    throw InapplicableError("type 3: fewer than 2^(k-1) copies of +-1");
  std::vector<Residue> out = c.elements();
  for (std::size_t i : {site.u_index, site.v_index}) out[i] = (out[i] + c.half()) & (c.modulus() - 1);
  return ResidueCollection(c.k(), std::move(out));
}

inline ResidueCollection compress(const ResidueCollection& c, const CompressionSite& site) {
  return std::visit([&](const auto& s) { return compress(c, s); }, site);
}

}  // namespace cubefree
