#pragma once

// Projective cubes and iterated sumsets, computed by shift-union over
// bit-indexed sets.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "cubefree/group.hpp"

namespace cubefree {

/// S* = { sum_{i in I} a_i : I subset of the generators }, including the empty sum 0.
inline ResidueSet iterated_sumset(const GroupContext& ctx, std::span<const Residue> generators) {
  ResidueSet p(ctx);
  p.insert(0);
  for (Residue a : generators) p |= p.shifted(a);
  return p;
}

inline ResidueSet iterated_sumset(const GeneratorMultiset& s) { return iterated_sumset(s.context(), s.elements()); }

/// Sigma* S: the set of all non-empty subset sums.
inline ResidueSet projective_cube(const GroupContext& ctx, std::span<const Residue> generators) {
  if (generators.empty()) throw ArgumentError("projective cube of an empty multiset");
  ResidueSet p(ctx);  // sums over subsets of the generators seen so far, with 0
  p.insert(0);
  ResidueSet q(ctx);  // non-empty sums only
  for (Residue a : generators) {
    const ResidueSet step = p.shifted(a);
    q |= step;
    p |= step;
  }
  return q;
}

inline ResidueSet projective_cube(const GeneratorMultiset& s) { return projective_cube(s.context(), s.elements()); }

/// Sizes of C_i* as the generators are introduced one at a time.
struct SumsetTrace {
  std::vector<std::size_t> prefix_sizes;
  /// growth[i] = prefix_sizes[i] - prefix_sizes[i-1], with |{0}| = 1 before the first step.
  std::vector<std::size_t> growth;
  /// First step at which the sumset did not grow, if any.
  std::optional<std::size_t> first_stall;
  ResidueSet final_sumset;
};

inline SumsetTrace incremental_sumset(const GeneratorMultiset& s, std::span<const std::size_t> order) {
  if (order.size() != s.size()) throw ArgumentError("order is not a permutation of the multiset positions");
  std::vector<bool> seen(s.size(), false);
  for (std::size_t i : order) {
    if (i >= s.size() || seen[i]) throw ArgumentError("order is not a permutation of the multiset positions");
    seen[i] = true;
  }
  const GroupContext& ctx = s.context();
  SumsetTrace trace{{}, {}, std::nullopt, ResidueSet(ctx)};
  ResidueSet p(ctx);
  p.insert(0);
  std::size_t prev = 1;
  for (std::size_t step = 0; step < order.size(); ++step) {
    p |= p.shifted(s[order[step]]);
    const std::size_t now = p.size();
    trace.prefix_sizes.push_back(now);
    trace.growth.push_back(now - prev);
    if (now == prev && !trace.first_stall) trace.first_stall = step;
    prev = now;
  }
  trace.final_sumset = std::move(p);
  return trace;
}

/// Trace under the multiset's sorted order.
inline SumsetTrace incremental_sumset(const GeneratorMultiset& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return incremental_sumset(s, order);
}

/// The cyclic subgroup generated by c.
inline ResidueSet cyclic_subgroup(Residue c, const GroupContext& ctx) {
  ctx.check(c);
  ResidueSet s(ctx);
  Residue x = 0;
  do {
    s.insert(x);
    x = (x + c) & ctx.mask();
  } while (x != 0);
  return s;
}

}  // namespace cubefree
