#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cubefree/serialize.hpp"

using namespace cubefree;

TEST(Json, ResidueSetRoundTrip) {
  const GroupContext ctx(5);
  const ResidueSet a(ctx, {0, 3, 17, 31});
  const Json j = to_json(a);
  EXPECT_EQ(j.dump(), "[0,3,17,31]");
  EXPECT_EQ(residue_set_from_json(ctx, Json::parse(j.dump())), a);
  EXPECT_THROW(residue_set_from_json(ctx, Json::parse("[32]")), RangeError);
  EXPECT_THROW(residue_set_from_json(ctx, Json::parse("[-1]")), RangeError);
  EXPECT_THROW(residue_set_from_json(ctx, Json::parse("{\"a\":1}")), ArgumentError);
  EXPECT_THROW(residue_set_from_json(ctx, Json::parse("[1.5]")), ArgumentError);
}

TEST(Json, Objects) {
  const GroupContext ctx(12);
  const Json bv = to_json(block_vector(26));
  EXPECT_EQ(bv["lengths"], Json::parse("[5,4,3]"));
  EXPECT_EQ(bv["d"], 26);
  const auto w = find_d_cube(ResidueSet(GroupContext(3), {2, 3, 4, 5, 7}), 3);
  ASSERT_TRUE(w);
  const Json wj = to_json(*w);
  EXPECT_TRUE(wj.contains("generators"));
  EXPECT_TRUE(wj.contains("cube"));
  const auto cert = max_cube_free_layer_unions(GroupContext(5), 3);
  const Json cj = to_json(cert);
  EXPECT_EQ(cj["mode"], "layer_unions");
  EXPECT_EQ(cj["optimum"], 20);
  EXPECT_EQ(cj["witness"].size(), 20u);
  const Json kj = to_json(keylemma_verify_all(1, 0));
  EXPECT_EQ(kj["checked"], 6);
  EXPECT_EQ(kj["counterexample_count"], 0);
}

TEST(ParseIntList, Forms) {
  EXPECT_EQ(parse_int_list("1,2, 3"), (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(parse_int_list("-4"), (std::vector<std::int64_t>{-4}));
  EXPECT_TRUE(parse_int_list("").empty());
  EXPECT_THROW(parse_int_list("1,,2"), ArgumentError);
  EXPECT_THROW(parse_int_list("1,a"), ArgumentError);
  EXPECT_THROW(parse_int_list("2x"), ArgumentError);
}

TEST(ListArgument, FileOrInline) {
  const std::string path = ::testing::TempDir() + "cubefree_set.json";
  {
    std::ofstream out(path);
    out << "[1, 5, 7]";
  }
  const GroupContext ctx(3);
  EXPECT_EQ(parse_set_argument(ctx, path), ResidueSet(ctx, {1, 5, 7}));
  EXPECT_EQ(parse_set_argument(ctx, "1,5,7"), ResidueSet(ctx, {1, 5, 7}));
  {
    std::ofstream out(path);
    out << "[1, 5";
  }
  EXPECT_THROW(list_argument(path), ArgumentError);
  std::remove(path.c_str());
}
