#pragma once

// Schur triples: ST(A) = |{(x,y,z) in A^3 : x + y = z}|, its split by
// layers, and the profile-only lower bound f(S).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cubefree/group.hpp"

namespace cubefree {

/// Ordered Schur triples. For each z in A, the pairs summing to z are A n (z - A).
inline std::uint64_t count_schur_triples(const ResidueSet& a) {
  const ResidueSet neg = a.negated();
  std::uint64_t total = 0;
  a.for_each([&](Residue z) { total += a.intersection_size(neg.shifted(z)); });
  return total;
}

/// Per-layer sizes |S_a| (a = 1..n+1) and suffix sizes |S_{a+}| (a = 1..n).
struct LayerProfile {
  unsigned n = 0;
  std::vector<std::uint64_t> sizes;   // sizes[a-1] = |S_a|
  std::vector<std::uint64_t> suffix;  // suffix[a-1] = |S_{a+}| = sum_{j > a} |S_j|
  unsigned highest = 0;               // B: largest a with |S_a| > 0, or 0 for the empty set

  std::uint64_t size(unsigned layer) const { return sizes.at(layer - 1); }
  std::uint64_t above(unsigned layer) const { return suffix.at(layer - 1); }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto s : sizes) t += s;
    return t;
  }
};

inline LayerProfile layer_profile(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  LayerProfile p;
  p.n = ctx.n();
  p.sizes.assign(ctx.n() + 1, 0);
  a.for_each([&](Residue x) { ++p.sizes[layer_of(x, ctx) - 1]; });
  p.suffix.assign(ctx.n(), 0);
  std::uint64_t run = p.sizes[ctx.n()];
  for (unsigned i = ctx.n(); i >= 1; --i) {
    p.suffix[i - 1] = run;
    run += p.sizes[i - 1];
  }
  for (unsigned i = 1; i <= ctx.n() + 1; ++i)
    if (p.sizes[i - 1] > 0) p.highest = i;
  return p;
}

/// Schur triples split by the layer pattern of (x, y, z).
struct TriplesByLayer {
  // Index a-1 for a in [1, n].
  std::vector<std::uint64_t> same_same_above;  // C(a, a, a+)
  std::vector<std::uint64_t> same_above_same;  // C(a, a+, a)
  std::vector<std::uint64_t> above_same_same;  // C(a+, a, a)
  std::uint64_t unclassified = 0;              // only (0, 0, 0) can land here

  std::uint64_t decomposed_total() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < same_same_above.size(); ++i)
      t += same_same_above[i] + same_above_same[i] + above_same_same[i];
    return t;
  }
};

inline TriplesByLayer count_triples_by_layer(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  const unsigned n = ctx.n();
  TriplesByLayer t;
  t.same_same_above.assign(n, 0);
  t.same_above_same.assign(n, 0);
  t.above_same_same.assign(n, 0);
  const std::vector<Residue> elems = a.elements();
  for (Residue x : elems) {
    const unsigned lx = layer_of(x, ctx);
    for (Residue y : elems) {
      const Residue z = (x + y) & ctx.mask();
      if (!a.contains(z)) continue;
      const unsigned ly = layer_of(y, ctx);
      const unsigned lz = layer_of(z, ctx);
      if (lx == ly && lz > lx && lx <= n)
        ++t.same_same_above[lx - 1];
      else if (lx == lz && ly > lx && lx <= n)
        ++t.same_above_same[lx - 1];
      else if (ly == lz && lx > ly && ly <= n)
        ++t.above_same_same[ly - 1];
      else
        ++t.unclassified;
    }
  }
  return t;
}

/// f(S) = 3 * sum_a max{ |S_a|(|S_a+| - |L_a| + |S_a|), |S_a+|(2|S_a| - |L_a|), 0 }.
/// Never exceeds ST(S).
inline std::uint64_t schur_lower_bound(const LayerProfile& p, const GroupContext& ctx) {
  if (p.n != ctx.n() || p.sizes.size() != ctx.n() + 1 || p.suffix.size() != ctx.n())
    throw ArgumentError("layer profile does not match the group context");
  std::int64_t total = 0;
  for (unsigned a = 1; a <= ctx.n(); ++a) {
    const auto s = static_cast<std::int64_t>(p.size(a));
    const auto up = static_cast<std::int64_t>(p.above(a));
    const auto l = static_cast<std::int64_t>(layer_size(a, ctx));
    total += std::max({s * (up - l + s), up * (2 * s - l), std::int64_t{0}});
  }
  return static_cast<std::uint64_t>(3 * total);
}

}  // namespace cubefree
