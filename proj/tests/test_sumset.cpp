#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "cubefree/enumerate.hpp"
#include "cubefree/reference.hpp"
#include "cubefree/sumset.hpp"
#include "test_util.hpp"

using namespace cubefree;
using testutil::elems;

using V = std::vector<Residue>;

TEST(ProjectiveCube, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(projective_cube(GeneratorMultiset(ctx, {2, 5, 5}))), (V{2, 4, 5, 7}));
  EXPECT_EQ(elems(projective_cube(GeneratorMultiset(ctx, {1, 1, 1}))), (V{1, 2, 3}));
  const GroupContext big(6);
  for (Residue a = 0; a < 64; ++a) {
    ResidueSet expect(big);
    expect.insert(a);
    expect.insert((2 * a) & big.mask());
    EXPECT_EQ(projective_cube(GeneratorMultiset(big, {a, a})), expect);
  }
  EXPECT_THROW(projective_cube(GeneratorMultiset(ctx)), ArgumentError);
}

TEST(IteratedSumset, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(elems(iterated_sumset(GeneratorMultiset(ctx, {2, 5, 5}))), (V{0, 2, 4, 5, 7}));
  EXPECT_EQ(elems(iterated_sumset(GeneratorMultiset(ctx))), (V{0}));
  EXPECT_EQ(elems(iterated_sumset(GeneratorMultiset(ctx, {1, 7}))), (V{0, 1, 7}));
}

TEST(ProjectiveCube, MatchesSubsetEnumeration) {
  for (unsigned n = 1; n <= 6; ++n) {
    const GroupContext ctx(n);
    for (std::size_t d = 1; d <= 6; ++d) {
      // Exhaustive where small, otherwise a seeded sample.
      if (multiset_count(ctx.modulus(), d) <= 20000) {
        for (NonDecreasingSequences seq(0, ctx.mask(), d); seq.valid(); seq.next()) {
          const auto& g = seq.current();
          ASSERT_EQ(projective_cube(ctx, g), reference::subset_sums(ctx, g));
        }
      } else {
        std::mt19937_64 rng(n * 100 + d);
        for (int rep = 0; rep < 3000; ++rep) {
          const auto g = testutil::random_multiset(ctx, rng, d);
          ASSERT_EQ(projective_cube(ctx, g), reference::subset_sums(ctx, g));
        }
      }
    }
  }
}

TEST(ProjectiveCube, SizeBoundMonotoneAndScaling) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 2000; ++rep) {
    const GroupContext ctx(1 + rng() % 8);
    const std::size_t d = 1 + rng() % 6;
    auto g = testutil::random_multiset(ctx, rng, d);
    const ResidueSet cube = projective_cube(ctx, g);
    ASSERT_LE(cube.size(), (std::size_t{1} << d) - 1);
    ASSERT_EQ(iterated_sumset(ctx, g), cube | ResidueSet(ctx, {0}));
    // S subset of T implies Sigma*S subset of Sigma*T.
    auto bigger = g;
    bigger.push_back(static_cast<Residue>(rng() & ctx.mask()));
    ASSERT_TRUE(cube.is_subset_of(projective_cube(ctx, bigger)));
    const Residue lambda = static_cast<Residue>((rng() & ctx.mask()) | 1);
    const GeneratorMultiset s(ctx, g);
    ASSERT_EQ(projective_cube(scale_multiset(lambda, s)), cube.scaled(lambda));
  }
}

TEST(IncrementalSumset, Examples) {
  const GroupContext ctx(3);
  EXPECT_EQ(incremental_sumset(GeneratorMultiset(ctx, {1, 1})).prefix_sizes, (std::vector<std::size_t>{2, 3}));
  const auto stall = incremental_sumset(GeneratorMultiset(ctx, {4, 4}));
  EXPECT_EQ(stall.prefix_sizes, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(stall.growth, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(stall.first_stall, std::optional<std::size_t>(1));
  for (unsigned n = 1; n <= 6; ++n) {
    const GroupContext c(n);
    for (Residue x = 1; x < c.modulus(); ++x)
      EXPECT_EQ(incremental_sumset(GeneratorMultiset(c, {x})).prefix_sizes, (std::vector<std::size_t>{2}));
  }
}

TEST(IncrementalSumset, RejectsBadOrders) {
  const GroupContext ctx(3);
  const GeneratorMultiset s(ctx, {1, 2, 3});
  const std::vector<std::size_t> short_order{0, 1}, repeated{0, 0, 1}, out_of_range{0, 1, 3};
  EXPECT_THROW(incremental_sumset(s, short_order), ArgumentError);
  EXPECT_THROW(incremental_sumset(s, repeated), ArgumentError);
  EXPECT_THROW(incremental_sumset(s, out_of_range), ArgumentError);
}

// A step that does not grow the sumset means the sumset already contains the
// cyclic subgroup of the new element, and in particular 2^{n-1}.
TEST(IncrementalSumset, StallAbsorbsCyclicSubgroup) {
  for (unsigned n = 1; n <= 5; ++n) {
    const GroupContext ctx(n);
    for (std::size_t d = 1; d <= 5; ++d)
      for (NonDecreasingSequences seq(0, ctx.mask(), d); seq.valid(); seq.next()) {
        const GeneratorMultiset s(ctx, seq.current());
        const auto trace = incremental_sumset(s);
        ASSERT_EQ(trace.prefix_sizes.back(), iterated_sumset(s).size());
        ResidueSet prefix(ctx, {0});
        for (std::size_t i = 0; i < d; ++i) {
          const ResidueSet before = prefix;
          prefix |= prefix.shifted(s[i]);
          if (trace.growth[i] == 0) {
            ASSERT_TRUE(cyclic_subgroup(s[i], ctx).is_subset_of(before)) << s.to_string();
            if (s[i] != 0) {
              ASSERT_TRUE(before.contains(ctx.modulus() / 2)) << s.to_string();
            }
          }
        }
      }
  }
}

TEST(IncrementalSumset, OrderDoesNotChangeFinalSize) {
  std::mt19937_64 rng(3);
  const GroupContext ctx(6);
  for (int rep = 0; rep < 500; ++rep) {
    const GeneratorMultiset s(ctx, testutil::random_multiset(ctx, rng, 1 + rng() % 7));
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto t = incremental_sumset(s, order);
    ASSERT_EQ(t.final_sumset, iterated_sumset(s));
    for (std::size_t i = 1; i < t.prefix_sizes.size(); ++i) ASSERT_GE(t.prefix_sizes[i], t.prefix_sizes[i - 1]);
  }
}

TEST(CyclicSubgroup, Sizes) {
  const GroupContext ctx(5);
  for (Residue c = 0; c < 32; ++c) EXPECT_EQ(cyclic_subgroup(c, ctx).size(), c == 0 ? 1u : 64u >> layer_of(c, ctx));
}
