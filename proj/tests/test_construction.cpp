#include <gtest/gtest.h>

#include "cubefree/construction.hpp"
#include "cubefree/detection.hpp"

using namespace cubefree;

namespace {
std::uint64_t mask_of(std::initializer_list<unsigned> layers) {
  std::uint64_t m = 0;
  for (unsigned l : layers) m |= std::uint64_t{1} << (l - 1);
  return m;
}
}  // namespace

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha(26), 4u);
  EXPECT_EQ(alpha(1), 0u);
  EXPECT_EQ(alpha(11), 3u);
  EXPECT_THROW(alpha(0), ArgumentError);
  for (std::uint64_t k = 1; k < 5000; ++k) {
    const unsigned a = alpha(k);
    EXPECT_LE(std::uint64_t{1} << a, k);
    EXPECT_GT(std::uint64_t{1} << (a + 1), k);
  }
}

TEST(ReduceD, Examples) {
  EXPECT_EQ(reduce_d(26), 11u);
  EXPECT_EQ(reduce_d(11), 4u);
  EXPECT_EQ(reduce_d(4), 1u);
  EXPECT_THROW(reduce_d(1), ArgumentError);
}

TEST(BlockVector, Examples) {
  EXPECT_EQ(block_vector(26).lengths, (std::vector<unsigned>{5, 4, 3}));
  EXPECT_EQ(block_vector(26).total, 12u);
  EXPECT_EQ(block_vector(2).lengths, (std::vector<unsigned>{2}));
  EXPECT_EQ(block_vector(6).lengths, (std::vector<unsigned>{3, 2, 2}));
  EXPECT_THROW(block_vector(1), ArgumentError);
  for (std::uint64_t d = 2; d <= 300; ++d)
    for (unsigned l : block_vector(d).lengths) EXPECT_GE(l, 2u);
}

TEST(ConstructCd, Examples) {
  const GroupContext n5(5);
  EXPECT_EQ(construct_cd(3, n5), layer_union(mask_of({1, 3}), n5));
  const GroupContext n12(12);
  EXPECT_EQ(construct_cd(26, n12), layer_union(mask_of({1, 2, 3, 4, 6, 7, 8, 10, 11}), n12));
  for (unsigned n = 1; n <= 6; ++n) EXPECT_TRUE(construct_cd(1, GroupContext(n)).empty());
  EXPECT_EQ(construct_cd(26, GroupContext(11)).size(), construct_cd(26, n12).size() / 2);
  EXPECT_THROW(construct_cd(26, GroupContext(10)), CapacityError);
  EXPECT_THROW(construct_cd(0, n5), ArgumentError);
}

TEST(ConstructCd, ListedRows) {
  const GroupContext ctx(12);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> rows = {
      {2, mask_of({1})},          {3, mask_of({1, 3})},       {4, mask_of({1, 2})},
      {5, mask_of({1, 2, 4})},    {6, mask_of({1, 2, 4, 6})}, {7, mask_of({1, 2, 4, 5})},
      {8, mask_of({1, 2, 3})},    {9, mask_of({1, 2, 3, 5})}};
  for (auto [d, mask] : rows) {
    EXPECT_EQ(construct_cd(d, ctx), layer_union(mask, ctx)) << d;
    EXPECT_EQ(cd_layer_mask(d), mask) << d;
  }
}

TEST(ConstructCd, RecursionMatchesBlockVector) {
  for (std::uint64_t d = 2; d <= 64; ++d) {
    const unsigned n = std::max(1u, min_exponent(d));
    const GroupContext ctx(n);
    const ResidueSet direct = construct_cd(d, ctx);
    ASSERT_EQ(construct_cd_recursive(d, ctx), direct) << d;
    // Rebuild from the block ranges.
    ResidueSet rebuilt(ctx);
    for (auto [first, last] : block_vector(d).blocks())
      if (first <= last) rebuilt |= layer_range_set(first, last, ctx);
    ASSERT_EQ(rebuilt, direct) << d;
    ASSERT_FALSE(direct.contains(0));
    ASSERT_EQ(cd_size(d, ctx), direct.size());
    if (n > 1) {
      EXPECT_THROW(construct_cd(d, GroupContext(n - 1)), CapacityError) << d;
    }
  }
}

TEST(CdSize, Examples) {
  EXPECT_EQ(cd_size(4, GroupContext(3)), 6u);
  EXPECT_EQ(cd_size(3, GroupContext(3)), 5u);
  EXPECT_EQ(cd_size(1, GroupContext(3)), 0u);
}

TEST(CdSize, PowersOfTwo) {
  for (unsigned ell = 1; ell <= 4; ++ell)
    for (unsigned n = 1; n <= 12; ++n) {
      const std::uint64_t d = std::uint64_t{1} << ell;
      if (min_exponent(d) > n) continue;
      const GroupContext ctx(n);
      EXPECT_EQ(cd_size(d, ctx), ctx.modulus() - (ctx.modulus() >> ell)) << "l=" << ell << " n=" << n;
    }
}

TEST(ConstructCd, CubeFree) {
  for (std::uint64_t d = 1; d <= 6; ++d)
    for (unsigned n = std::max(1u, min_exponent(d)); n <= 8; ++n)
      EXPECT_TRUE(is_d_cube_free(construct_cd(d, GroupContext(n)), d)) << "d=" << d << " n=" << n;
}

TEST(ConstructCd, AddingAnyResidueCreatesCube) {
  for (std::uint64_t d = 1; d <= 5; ++d)
    for (unsigned n = std::max(1u, min_exponent(d)); n <= 7; ++n) {
      const ResidueSet cd = construct_cd(d, GroupContext(n));
      cd.complement().for_each([&](Residue x) {
        ResidueSet b = cd;
        b.insert(x);
        EXPECT_TRUE(find_d_cube(b, d).has_value()) << "d=" << d << " n=" << n << " x=" << x;
      });
    }
}
