#pragma once

// The conjectured extremal d-cube-free sets C_d and their block vectors.
//
//   C_1 = {}
//   C_d = L_[1,l] u { 2^(l+1) x : x in C_(d - 2^l + 1) },  l = floor(log2 d)
//
// Unrolled, C_d includes l_1 - 1 layers, skips one, includes l_2 - 1 layers,
// skips one, and so on, where l_i = alpha(d_(i-1)) + 1 and
// d_i = d_(i-1) - 2^alpha(d_(i-1)) + 1 until d_q = 1.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cubefree/group.hpp"

namespace cubefree {

/// Largest l with 2^l <= k.
inline unsigned alpha(std::uint64_t k) {
  if (k < 1) throw ArgumentError("alpha(k) needs k >= 1");
  return static_cast<unsigned>(std::bit_width(k)) - 1;
}

/// d - 2^alpha(d) + 1: the dimension handled by the next block.
inline std::uint64_t reduce_d(std::uint64_t d) {
  if (d < 2) throw ArgumentError("reduce_d needs d >= 2");
  return d - (std::uint64_t{1} << alpha(d)) + 1;
}

struct BlockVector {
  std::vector<unsigned> lengths;
  unsigned total = 0;  // M = sum of lengths
  std::uint64_t d = 0;

  /// Inclusive layer ranges [first, last] of the blocks.
  std::vector<std::pair<unsigned, unsigned>> blocks() const {
    std::vector<std::pair<unsigned, unsigned>> out;
    unsigned offset = 0;
    for (unsigned l : lengths) {
      out.emplace_back(offset + 1, offset + l - 1);
      offset += l;
    }
    return out;
  }

  /// Highest layer index used by C_d (0 when C_d is empty).
  unsigned top_layer() const { return total == 0 ? 0 : total - 1; }

  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

inline BlockVector block_vector(std::uint64_t d) {
  if (d < 2) throw ArgumentError("block_vector needs d >= 2");
  BlockVector bv;
  bv.d = d;
  for (std::uint64_t cur = d; cur != 1; cur = reduce_d(cur)) {
    const unsigned l = alpha(cur) + 1;
    bv.lengths.push_back(l);
    bv.total += l;
  }
  return bv;
}

namespace detail {
inline BlockVector block_vector_any(std::uint64_t d) {
  if (d < 1) throw ArgumentError("C_d needs d >= 1");
  if (d == 1) return BlockVector{{}, 0, 1};
  return block_vector(d);
}
}  // namespace detail

/// Smallest n for which C_d fits inside Z_{2^n}.
inline unsigned min_exponent(std::uint64_t d) {
  const BlockVector bv = detail::block_vector_any(d);
  return std::max(1U, bv.top_layer());
}

/// Bit i-1 set iff L_i is part of C_d.
inline std::uint64_t cd_layer_mask(std::uint64_t d) {
  const BlockVector bv = detail::block_vector_any(d);
  if (bv.top_layer() > 63) throw CapacityError("C_" + std::to_string(d) + " uses more than 63 layers");
  std::uint64_t mask = 0;
  for (auto [first, last] : bv.blocks())
    for (unsigned i = first; i <= last; ++i) mask |= std::uint64_t{1} << (i - 1);
  return mask;
}

namespace detail {
inline void check_fits(std::uint64_t d, const GroupContext& ctx) {
  const BlockVector bv = block_vector_any(d);
  if (bv.top_layer() > ctx.n())
    throw CapacityError("C_" + std::to_string(d) + " needs layers up to L_" + std::to_string(bv.top_layer()) +
                            " but n = " + std::to_string(ctx.n()),
                        bv.top_layer(), ctx.n());
}
}  // namespace detail

/// C_d built from its block vector.
inline ResidueSet construct_cd(std::uint64_t d, const GroupContext& ctx) {
  detail::check_fits(d, ctx);
  return layer_union(cd_layer_mask(d), ctx);
}

/// C_d built by the literal recursion (shift-embedding C_{reduce_d(d)}).
inline ResidueSet construct_cd_recursive(std::uint64_t d, const GroupContext& ctx) {
  detail::check_fits(d, ctx);
  if (d == 1) return ResidueSet(ctx);
  const unsigned l = alpha(d);
  ResidueSet out = layer_range_set(1, l, ctx);
  const std::uint64_t rest = reduce_d(d);
  if (rest == 1) return out;
  const Residue factor = static_cast<Residue>((std::uint64_t{1} << (l + 1)) & ctx.mask());
  // The embedded copy lives l+1 layers further down; any layer that would
  // fall off the end was already rejected by check_fits.
  const GroupContext inner(ctx.n() - l - 1);
  const ResidueSet sub = construct_cd_recursive(rest, inner);
  sub.for_each([&](Residue x) { out.insert(static_cast<Residue>((std::uint64_t{x} * factor) & ctx.mask())); });
  return out;
}

/// |C_d| from the layer sizes, without materialising the set.
inline std::uint64_t cd_size(std::uint64_t d, const GroupContext& ctx) {
  detail::check_fits(d, ctx);
  const std::uint64_t mask = cd_layer_mask(d);
  std::uint64_t total = 0;
  for (unsigned i = 1; i <= ctx.n(); ++i)
    if ((mask >> (i - 1)) & 1U) total += layer_size(i, ctx);
  return total;
}

}  // namespace cubefree
