#pragma once

// Deliberately naive versions of the core operations, used to cross-check
// the fast implementations.

#include <cstdint>
#include <optional>
#include <vector>

#include "cubefree/enumerate.hpp"
#include "cubefree/group.hpp"

namespace cubefree::reference {

/// Nonempty subset sums, by looping over all 2^d index masks.
inline ResidueSet subset_sums(const GroupContext& ctx, const std::vector<Residue>& gens) {
  ResidueSet out(ctx);
  const std::size_t d = gens.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < d; ++i)
      if ((mask >> i) & 1U) s += gens[i];
    out.insert(static_cast<Residue>(s & ctx.mask()));
  }
  return out;
}

/// First generator multiset (in lexicographic order over all of Z_{2^n}) whose cube lies in A.
inline std::optional<std::vector<Residue>> find_d_cube(const ResidueSet& a, std::size_t d) {
  const GroupContext& ctx = a.context();
  for (NonDecreasingSequences seq(0, ctx.modulus() - 1, d); seq.valid(); seq.next()) {
    const auto& g = seq.current();
    if (subset_sums(ctx, g).is_subset_of(a)) return g;
  }
  return std::nullopt;
}

inline std::uint64_t schur_triples(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  std::uint64_t n = 0;
  for (Residue x : a.elements())
    for (Residue y : a.elements())
      for (Residue z : a.elements())
        if (((x + y) & ctx.mask()) == z) ++n;
  return n;
}

}  // namespace cubefree::reference
