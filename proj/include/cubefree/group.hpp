#pragma once

// Arithmetic and structural primitives of the cyclic group Z_{2^n}:
// residues, bit-indexed residue sets, layers, centred sets and generator
// multisets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubefree/errors.hpp"

namespace cubefree {

using Residue = std::uint32_t;

/// Largest supported exponent. A ResidueSet at this size occupies 2 MiB.
inline constexpr unsigned kMaxExponent = 24;

/// The ambient group Z_{2^n}.
class GroupContext {
 public:
  explicit GroupContext(unsigned n) : n_(n) {
    if (n < 1 || n > kMaxExponent)
      throw RangeError("exponent n=" + std::to_string(n) + " outside [1, " +
                       std::to_string(kMaxExponent) + "]");
  }

  unsigned n() const noexcept { return n_; }
  Residue modulus() const noexcept { return Residue{1} << n_; }
  Residue mask() const noexcept { return modulus() - 1; }

  /// Canonical representative in [0, 2^n) of an arbitrary integer.
  Residue reduce(std::int64_t v) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(v) & mask());
  }

  bool contains(std::int64_t v) const noexcept { return v >= 0 && v < static_cast<std::int64_t>(modulus()); }

  void check(std::int64_t v) const {
    if (!contains(v))
      throw RangeError("residue " + std::to_string(v) + " outside [0, " + std::to_string(modulus()) + ")");
  }

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  unsigned n_;
};

/// A subset of Z_{2^n} stored as a characteristic bit vector.
class ResidueSet {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  explicit ResidueSet(GroupContext ctx) : ctx_(ctx), words_(word_count(ctx), 0) {}

  ResidueSet(GroupContext ctx, std::initializer_list<Residue> members) : ResidueSet(ctx) {
    for (Residue x : members) insert(x);
  }

  static ResidueSet from(GroupContext ctx, std::span<const Residue> members) {
    ResidueSet s(ctx);
    for (Residue x : members) s.insert(x);
    return s;
  }

  static ResidueSet full(GroupContext ctx) {
    ResidueSet s(ctx);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  /// Set whose characteristic function is the low 2^n bits of `bits`. Requires n <= 6.
  static ResidueSet from_mask(GroupContext ctx, Word bits) {
    if (ctx.n() > 6) throw RangeError("from_mask requires n <= 6");
    ResidueSet s(ctx);
    s.words_[0] = bits;
    s.trim();
    return s;
  }

  const GroupContext& context() const noexcept { return ctx_; }
  std::span<const Word> words() const noexcept { return words_; }

  /// Low word of the characteristic function; the whole set when n <= 6.
  Word mask() const noexcept { return words_[0]; }

  bool contains(Residue x) const noexcept {
    return x < ctx_.modulus() && ((words_[x / kWordBits] >> (x % kWordBits)) & 1U);
  }

  void insert(Residue x) {
    ctx_.check(x);
    words_[x / kWordBits] |= Word{1} << (x % kWordBits);
  }

  void erase(Residue x) {
    ctx_.check(x);
    words_[x / kWordBits] &= ~(Word{1} << (x % kWordBits));
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  std::optional<Residue> min() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Residue>(i * kWordBits + std::countr_zero(words_[i]));
    return std::nullopt;
  }

  /// Smallest member >= from, if any.
  std::optional<Residue> next(Residue from) const noexcept {
    if (from >= ctx_.modulus()) return std::nullopt;
    std::size_t i = from / kWordBits;
    Word w = words_[i] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w) return static_cast<Residue>(i * kWordBits + std::countr_zero(w));
      if (++i == words_.size()) return std::nullopt;
      w = words_[i];
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        fn(static_cast<Residue>(i * kWordBits + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Residue> elements() const {
    std::vector<Residue> out;
    out.reserve(size());
    for_each([&](Residue x) { out.push_back(x); });
    return out;
  }

  bool is_subset_of(const ResidueSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool intersects(const ResidueSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  std::size_t intersection_size(const ResidueSet& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  ResidueSet& operator|=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ResidueSet& operator&=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  ResidueSet& operator-=(const ResidueSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend ResidueSet operator|(ResidueSet a, const ResidueSet& b) { return a |= b; }
  friend ResidueSet operator&(ResidueSet a, const ResidueSet& b) { return a &= b; }
  friend ResidueSet operator-(ResidueSet a, const ResidueSet& b) { return a -= b; }

  ResidueSet complement() const {
    ResidueSet out(*this);
    for (Word& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  /// { x + a : x in this }.
  ResidueSet shifted(Residue a) const {
    a &= ctx_.mask();
    if (a == 0) return *this;
    ResidueSet out(ctx_);
    const Residue m = ctx_.modulus();
    if (m <= kWordBits) {
      const Word w = words_[0];
      const Word lo = w << a;
      const Word hi = w >> (m - a);
      out.words_[0] = lo | hi;
      out.trim();
      return out;
    }
    const std::size_t nw = words_.size();
    const std::size_t q = a / kWordBits;
    const unsigned r = a % kWordBits;
    for (std::size_t i = 0; i < nw; ++i) {
      const Word w = words_[i];
      if (!w) continue;
      out.words_[(i + q) % nw] |= w << r;
      if (r) out.words_[(i + q + 1) % nw] |= w >> (kWordBits - r);
    }
    return out;
  }

  /// { -x : x in this }.
  ResidueSet negated() const {
    ResidueSet out(ctx_);
    for_each([&](Residue x) { out.insert(ctx_.reduce(-static_cast<std::int64_t>(x))); });
    return out;
  }

  /// { lambda * x : x in this }.
  ResidueSet scaled(Residue lambda) const {
    ResidueSet out(ctx_);
    for_each([&](Residue x) { out.insert(static_cast<Residue>((std::uint64_t{lambda} * x) & ctx_.mask())); });
    return out;
  }

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.ctx_ == b.ctx_ && a.words_ == b.words_;
  }

  /// Orders by ascending element lists (lexicographic).
  friend bool lex_less(const ResidueSet& a, const ResidueSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL ^ ctx_.n();
    for (Word w : words_) h = (h ^ static_cast<std::size_t>(w)) * 1099511628211ULL + (h >> 29);
    return h;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](Residue x) {
      if (!first) s += ",";
      s += std::to_string(x);
      first = false;
    });
    return s + "}";
  }

 private:
  static std::size_t word_count(const GroupContext& ctx) {
    return (std::size_t{ctx.modulus()} + kWordBits - 1) / kWordBits;
  }

  void trim() noexcept {
    const Residue m = ctx_.modulus();
    if (m < kWordBits) words_[0] &= (Word{1} << m) - 1;
  }

  GroupContext ctx_;
  std::vector<Word> words_;
};

struct ResidueSetHash {
  std::size_t operator()(const ResidueSet& s) const noexcept { return s.hash(); }
};

// ---------------------------------------------------------------------------
// Layers

/// Index i with x in L_i: the 2-adic valuation of x plus one, and n+1 for 0.
inline unsigned layer_of(Residue x, const GroupContext& ctx) {
  ctx.check(x);
  if (x == 0) return ctx.n() + 1;
  return static_cast<unsigned>(std::countr_zero(x)) + 1;
}

inline void check_layer(unsigned i, const GroupContext& ctx) {
  if (i < 1 || i > ctx.n() + 1)
    throw RangeError("layer index " + std::to_string(i) + " outside [1, " + std::to_string(ctx.n() + 1) + "]");
}

/// |L_i|: 2^{n-i} for i <= n, and 1 for L_{n+1} = {0}.
inline std::uint64_t layer_size(unsigned i, const GroupContext& ctx) {
  check_layer(i, ctx);
  return i == ctx.n() + 1 ? 1 : std::uint64_t{1} << (ctx.n() - i);
}

/// L_i = { x : x = 2^{i-1} mod 2^i }, with L_{n+1} = {0}.
inline ResidueSet layer_set(unsigned i, const GroupContext& ctx) {
  check_layer(i, ctx);
  ResidueSet s(ctx);
  if (i == ctx.n() + 1) {
    s.insert(0);
    return s;
  }
  const Residue step = Residue{1} << i;
  for (Residue x = Residue{1} << (i - 1); x < ctx.modulus(); x += step) s.insert(x);
  return s;
}

/// L_a u L_{a+1} u ... u L_b.
inline ResidueSet layer_range_set(unsigned a, unsigned b, const GroupContext& ctx) {
  if (a > b) throw ArgumentError("layer range [" + std::to_string(a) + ", " + std::to_string(b) + "] is empty");
  check_layer(a, ctx);
  check_layer(b, ctx);
  ResidueSet s(ctx);
  for (unsigned i = a; i <= b; ++i) s |= layer_set(i, ctx);
  return s;
}

/// Union of the layers whose indices are listed (bit i-1 of `layers` selects L_i).
inline ResidueSet layer_union(std::uint64_t layers, const GroupContext& ctx) {
  ResidueSet s(ctx);
  for (unsigned i = 1; i <= ctx.n() + 1; ++i)
    if ((layers >> (i - 1)) & 1U) s |= layer_set(i, ctx);
  return s;
}

namespace detail {

// Fills whole layers in the given order, then the numerically smallest
// residues of the first layer that does not fit.
inline ResidueSet fill_layers(std::uint64_t m, const GroupContext& ctx, const std::vector<unsigned>& order) {
  if (m > ctx.modulus())
    throw RangeError("cardinality " + std::to_string(m) + " exceeds 2^n = " + std::to_string(ctx.modulus()));
  ResidueSet s(ctx);
  for (unsigned i : order) {
    if (m == 0) break;
    const std::uint64_t sz = layer_size(i, ctx);
    if (sz <= m) {
      s |= layer_set(i, ctx);
      m -= sz;
      continue;
    }
    layer_set(i, ctx).for_each([&](Residue x) {
      if (m > 0) {
        s.insert(x);
        --m;
      }
    });
  }
  return s;
}

}  // namespace detail

/// Canonical centred set of size m: full L_1..L_{i-1}, then the smallest residues of L_i.
inline ResidueSet centred_set(std::uint64_t m, const GroupContext& ctx) {
  std::vector<unsigned> order;
  for (unsigned i = 1; i <= ctx.n() + 1; ++i) order.push_back(i);
  return detail::fill_layers(m, ctx, order);
}

/// Canonical anti-centred set of size m: full L_{n+1}, L_n, ... then part of the next layer up.
inline ResidueSet anti_centred_set(std::uint64_t m, const GroupContext& ctx) {
  std::vector<unsigned> order;
  for (unsigned i = ctx.n() + 1; i >= 1; --i) order.push_back(i);
  return detail::fill_layers(m, ctx, order);
}

/// True if some i has L_j inside A for all j < i and A disjoint from L_j for all j > i.
inline bool is_centred(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  const unsigned top = ctx.n() + 1;
  for (unsigned i = 1; i <= top; ++i) {
    bool ok = true;
    for (unsigned j = 1; j < i && ok; ++j) ok = layer_set(j, ctx).is_subset_of(a);
    for (unsigned j = i + 1; j <= top && ok; ++j) ok = !layer_set(j, ctx).intersects(a);
    if (ok) return true;
  }
  return false;
}

/// True if A is a union of whole layers.
inline bool is_layer_union(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  for (unsigned i = 1; i <= ctx.n() + 1; ++i) {
    const ResidueSet l = layer_set(i, ctx);
    const std::size_t c = l.intersection_size(a);
    if (c != 0 && c != l.size()) return false;
  }
  return true;
}

/// True if lambda * A = A for every odd lambda.
inline bool is_unit_invariant(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  // -1, 3 and 5 generate the unit group of Z_{2^n} for every n.
  for (Residue lambda : {ctx.mask(), Residue{3}, Residue{5}}) {
    if (a.scaled(lambda & ctx.mask()) != a) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generator multisets

/// A multiset of residues, kept sorted non-decreasing.
class GeneratorMultiset {
 public:
  explicit GeneratorMultiset(GroupContext ctx) : ctx_(ctx) {}

  GeneratorMultiset(GroupContext ctx, std::vector<Residue> elements) : ctx_(ctx), elements_(std::move(elements)) {
    for (Residue x : elements_) ctx_.check(x);
    std::sort(elements_.begin(), elements_.end());
  }

  GeneratorMultiset(GroupContext ctx, std::initializer_list<Residue> elements)
      : GeneratorMultiset(ctx, std::vector<Residue>(elements)) {}

  const GroupContext& context() const noexcept { return ctx_; }
  std::span<const Residue> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  Residue operator[](std::size_t i) const { return elements_.at(i); }

  void insert(Residue x) {
    ctx_.check(x);
    elements_.insert(std::upper_bound(elements_.begin(), elements_.end(), x), x);
  }

  /// Sub-multiset inclusion.
  bool is_submultiset_of(const GeneratorMultiset& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  friend bool operator==(const GeneratorMultiset&, const GeneratorMultiset&) = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? "," : "") + std::to_string(elements_[i]);
    return s + "}";
  }

 private:
  GroupContext ctx_;
  std::vector<Residue> elements_;
};

/// lambda * C for odd lambda, re-sorted.
inline GeneratorMultiset scale_multiset(Residue lambda, const GeneratorMultiset& c) {
  if (lambda % 2 == 0) throw ArgumentError("scaling factor " + std::to_string(lambda) + " is not odd");
  const GroupContext& ctx = c.context();
  std::vector<Residue> out;
  out.reserve(c.size());
  for (Residue x : c.elements()) out.push_back(static_cast<Residue>((std::uint64_t{lambda} * x) & ctx.mask()));
  return GeneratorMultiset(ctx, std::move(out));
}

/// A residue modulo 2^{k+1} with its minimal absolute value.
struct SignedResidue {
  Residue t;
  Residue abs;
};

/// min(t, 2^{k+1} - t).
inline Residue residue_abs(Residue t, unsigned k) {
  const std::uint64_t m = std::uint64_t{1} << (k + 1);
  if (t >= m) throw RangeError("residue " + std::to_string(t) + " outside [0, 2^(k+1))");
  return static_cast<Residue>(t == 0 ? 0 : std::min<std::uint64_t>(t, m - t));
}

inline SignedResidue signed_residue(Residue t, unsigned k) { return {t, residue_abs(t, k)}; }

}  // namespace cubefree
