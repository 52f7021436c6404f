#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cubefree/group.hpp"

namespace testutil {

using cubefree::GroupContext;
using cubefree::Residue;
using cubefree::ResidueSet;

inline std::vector<Residue> elems(const ResidueSet& s) { return s.elements(); }

inline ResidueSet random_set(const GroupContext& ctx, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  ResidueSet s(ctx);
  for (Residue x = 0; x < ctx.modulus(); ++x)
    if (coin(rng)) s.insert(x);
  return s;
}

inline std::vector<Residue> random_multiset(const GroupContext& ctx, std::mt19937_64& rng, std::size_t size) {
  std::uniform_int_distribution<Residue> pick(0, ctx.mask());
  std::vector<Residue> out(size);
  for (auto& x : out) x = pick(rng);
  return out;
}

// Layer by the defining congruence x = 2^{i-1} mod 2^i.
inline unsigned layer_by_congruence(Residue x, unsigned n) {
  if (x == 0) return n + 1;
  for (unsigned i = 1; i <= n; ++i)
    if (x % (1U << i) == (1U << (i - 1))) return i;
  return 0;
}

}  // namespace testutil
