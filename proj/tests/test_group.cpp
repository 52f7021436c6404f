#include <gtest/gtest.h>

#include <random>

#include "cubefree/group.hpp"
#include "test_util.hpp"

using namespace cubefree;
using testutil::elems;

using V = std::vector<Residue>;

TEST(GroupContext, RejectsBadExponent) {
  EXPECT_THROW(GroupContext(0), RangeError);
  EXPECT_THROW(GroupContext(kMaxExponent + 1), RangeError);
  EXPECT_EQ(GroupContext(3).modulus(), 8u);
  EXPECT_EQ(GroupContext(3).reduce(-1), 7u);
}

TEST(LayerOf, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(layer_of(5, ctx), 1u);
  EXPECT_EQ(layer_of(0, ctx), 4u);
  EXPECT_EQ(layer_of(6, ctx), 2u);
  EXPECT_THROW(layer_of(8, ctx), RangeError);
}

TEST(LayerOf, MatchesCongruenceAndLayerSet) {
  for (unsigned n = 1; n <= 12; ++n) {
    const GroupContext ctx(n);
    std::vector<ResidueSet> layers;
    for (unsigned i = 1; i <= n + 1; ++i) layers.push_back(layer_set(i, ctx));
    for (Residue x = 0; x < ctx.modulus(); ++x) {
      const unsigned i = layer_of(x, ctx);
      ASSERT_EQ(i, testutil::layer_by_congruence(x, n)) << x;
      for (unsigned j = 1; j <= n + 1; ++j) ASSERT_EQ(layers[j - 1].contains(x), i == j);
    }
  }
}

TEST(LayerSet, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(layer_set(1, ctx)), (V{1, 3, 5, 7}));
  EXPECT_EQ(elems(layer_set(3, ctx)), (V{4}));
  EXPECT_EQ(elems(layer_set(4, ctx)), (V{0}));
  EXPECT_THROW(layer_set(0, ctx), RangeError);
  EXPECT_THROW(layer_set(5, ctx), RangeError);
}

TEST(LayerSet, PartitionAndHalving) {
  for (unsigned n = 1; n <= 12; ++n) {
    const GroupContext ctx(n);
    ResidueSet all(ctx);
    std::size_t total = 0;
    for (unsigned i = 1; i <= n + 1; ++i) {
      const ResidueSet l = layer_set(i, ctx);
      EXPECT_FALSE(l.intersects(all));
      all |= l;
      total += l.size();
      EXPECT_EQ(l.size(), layer_size(i, ctx));
      if (i >= 2 && i <= n) {
        EXPECT_EQ(layer_size(i - 1, ctx), 2 * layer_size(i, ctx));
      }
    }
    EXPECT_EQ(all, ResidueSet::full(ctx));
    EXPECT_EQ(total, ctx.modulus());
  }
}

TEST(LayerRangeSet, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(layer_range_set(1, 2, ctx)), (V{1, 2, 3, 5, 6, 7}));
  EXPECT_EQ(elems(layer_range_set(2, 2, ctx)), (V{2, 6}));
  for (unsigned n = 1; n <= 8; ++n) {
    const GroupContext c(n);
    EXPECT_EQ(layer_range_set(1, n + 1, c), ResidueSet::full(c));
  }
  EXPECT_THROW(layer_range_set(3, 2, ctx), ArgumentError);
}

TEST(LayerRangeSet, CardinalityFormula) {
  for (unsigned n = 1; n <= 8; ++n) {
    const GroupContext ctx(n);
    for (unsigned a = 1; a <= n + 1; ++a)
      for (unsigned b = a; b <= n + 1; ++b) {
        std::uint64_t expect = b == n + 1 ? 1 : 0;
        for (unsigned i = a; i <= std::min(b, n); ++i) expect += std::uint64_t{1} << (n - i);
        EXPECT_EQ(layer_range_set(a, b, ctx).size(), expect);
      }
  }
}

TEST(CentredSet, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(centred_set(4, ctx)), (V{1, 3, 5, 7}));
  EXPECT_EQ(elems(centred_set(5, ctx)), (V{1, 2, 3, 5, 7}));
  EXPECT_TRUE(centred_set(0, ctx).empty());
  EXPECT_THROW(centred_set(9, ctx), RangeError);
}

TEST(CentredSet, NestedAndCentred) {
  for (unsigned n = 1; n <= 10; ++n) {
    const GroupContext ctx(n);
    ResidueSet prev = centred_set(0, ctx);
    for (std::uint64_t m = 1; m <= ctx.modulus(); ++m) {
      const ResidueSet cur = centred_set(m, ctx);
      ASSERT_EQ(cur.size(), m);
      ASSERT_TRUE(prev.is_subset_of(cur)) << "n=" << n << " m=" << m;
      if (n <= 6) {
        ASSERT_TRUE(is_centred(cur));
      }
      prev = cur;
    }
  }
}

TEST(AntiCentredSet, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(anti_centred_set(1, ctx)), (V{0}));
  EXPECT_EQ(elems(anti_centred_set(2, ctx)), (V{0, 4}));
  EXPECT_THROW(anti_centred_set(9, ctx), RangeError);
  // 2^{n-l} elements: the n-l+1 smallest layers.
  for (unsigned n = 1; n <= 8; ++n) {
    const GroupContext c(n);
    for (unsigned l = 0; l <= n; ++l)
      EXPECT_EQ(anti_centred_set(std::uint64_t{1} << (n - l), c), layer_range_set(l + 1, n + 1, c));
  }
}

TEST(ScaleMultiset, Examples) {
  const GroupContext ctx(3);
  const GeneratorMultiset c(ctx, {1, 1, 2});
  EXPECT_EQ(scale_multiset(1, c), c);
  EXPECT_EQ(scale_multiset(3, c), GeneratorMultiset(ctx, {3, 3, 6}));
  EXPECT_EQ(scale_multiset(7, GeneratorMultiset(ctx, {1})), GeneratorMultiset(ctx, {7}));
  EXPECT_THROW(scale_multiset(2, c), ArgumentError);
}

TEST(OddScaling, PreservesLayers) {
  for (unsigned n = 1; n <= 10; ++n) {
    const GroupContext ctx(n);
    for (Residue lambda = 1; lambda < std::min<Residue>(ctx.modulus(), 64); lambda += 2)
      for (Residue x = 0; x < ctx.modulus(); ++x)
        ASSERT_EQ(layer_of(static_cast<Residue>((std::uint64_t{lambda} * x) & ctx.mask()), ctx), layer_of(x, ctx));
  }
}

TEST(ResidueAbs, Examples) {
  EXPECT_EQ(residue_abs(7, 2), 1u);
  EXPECT_EQ(residue_abs(4, 2), 4u);
  EXPECT_EQ(residue_abs(3, 2), 3u);
  EXPECT_EQ(residue_abs(0, 2), 0u);
  for (unsigned k = 1; k <= 6; ++k)
    for (Residue t = 0; t < (Residue{1} << (k + 1)); ++t) {
      const SignedResidue s = signed_residue(t, k);
      EXPECT_LE(s.abs, Residue{1} << k);
      EXPECT_EQ(s.abs, std::min(t, (Residue{1} << (k + 1)) - t) % (Residue{1} << (k + 1)));
    }
}

TEST(ResidueSet, ShiftNegateScaleAgainstPointwise) {
  std::mt19937_64 rng(11);
  for (unsigned n = 1; n <= 9; ++n) {
    const GroupContext ctx(n);
    for (int rep = 0; rep < 20; ++rep) {
      const ResidueSet a = testutil::random_set(ctx, rng, 0.4);
      const Residue s = static_cast<Residue>(rng() & ctx.mask());
      const Residue lambda = static_cast<Residue>((rng() & ctx.mask()) | 1);
      ResidueSet shifted(ctx), neg(ctx), scaled(ctx);
      a.for_each([&](Residue x) {
        shifted.insert((x + s) & ctx.mask());
        neg.insert((ctx.modulus() - x) & ctx.mask());
        scaled.insert(static_cast<Residue>((std::uint64_t{lambda} * x) & ctx.mask()));
      });
      ASSERT_EQ(a.shifted(s), shifted);
      ASSERT_EQ(a.negated(), neg);
      ASSERT_EQ(a.scaled(lambda), scaled);
      ASSERT_EQ(a.complement().size(), ctx.modulus() - a.size());
    }
  }
}

TEST(ResidueSet, BasicOperations) {
  const GroupContext ctx(7);
  ResidueSet a(ctx, {1, 64, 127});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(*a.min(), 1u);
  EXPECT_EQ(*a.next(2), 64u);
  EXPECT_FALSE(a.next(128).has_value());
  a.erase(64);
  EXPECT_EQ(*a.next(2), 127u);
  EXPECT_THROW(a.insert(128), RangeError);
  EXPECT_EQ(a.to_string(), "{1,127}");
  EXPECT_TRUE(lex_less(ResidueSet(ctx, {1, 5}), ResidueSet(ctx, {1, 6})));
  EXPECT_TRUE(lex_less(ResidueSet(ctx, {1}), ResidueSet(ctx, {1, 6})));
}

TEST(Predicates, LayerUnionAndUnitInvariance) {
  const GroupContext ctx(5);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const ResidueSet u = layer_union(mask, ctx);
    EXPECT_TRUE(is_layer_union(u));
    EXPECT_TRUE(is_unit_invariant(u));
  }
  EXPECT_FALSE(is_layer_union(ResidueSet(ctx, {1})));
  EXPECT_FALSE(is_unit_invariant(ResidueSet(ctx, {1})));
  EXPECT_TRUE(is_unit_invariant(ResidueSet(ctx, {0})));
}
