#include "bci/blocks.hpp"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "bci/error.hpp"
#include "test_support.hpp"

namespace bci {
namespace {

using Order = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(ZigzagTest, SmallOrders) {
  EXPECT_EQ(zigzag_order(1), (Order{{0, 0}}));
  EXPECT_EQ(zigzag_order(2), (Order{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(zigzag_order(3), (Order{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {1, 2}, {2, 1}, {2, 2}}));
}

TEST(ZigzagTest, FlattensThreeByThree) {
  const std::vector<std::uint8_t> block{1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_EQ(zigzag_flatten(block, 3), (std::vector<std::uint8_t>{1, 2, 4, 7, 5, 3, 6, 8, 9}));
  EXPECT_EQ(zigzag_unflatten(zigzag_flatten(block, 3), 3), block);
}

TEST(ZigzagTest, EightByEightStartsLikeJpeg) {
  const std::vector<std::size_t> idx = zigzag_indices(8);
  const std::vector<std::size_t> head{0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5};
  EXPECT_TRUE(std::equal(head.begin(), head.end(), idx.begin()));
  EXPECT_EQ(idx.back(), 63U);
}

TEST(ZigzagTest, IsBijectionForAllSizes) {
  for (std::size_t n = 1; n <= 32; ++n) {
    std::vector<std::size_t> idx = zigzag_indices(n);
    ASSERT_EQ(idx.size(), n * n);
    const Order order = zigzag_order(n);
    for (std::size_t k = 1; k < order.size(); ++k) {
      // consecutive cells are neighbours (including diagonal)
      const auto dr = static_cast<long>(order[k].first) - static_cast<long>(order[k - 1].first);
      const auto dc = static_cast<long>(order[k].second) - static_cast<long>(order[k - 1].second);
      EXPECT_LE(std::abs(dr), 1);
      EXPECT_LE(std::abs(dc), 1);
    }
    std::sort(idx.begin(), idx.end());
    std::vector<std::size_t> expected(n * n);
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(idx, expected) << "n=" << n;
  }
}

TEST(ZigzagTest, UnflattenRejectsBadLength) {
  try {
    (void)zigzag_unflatten(std::vector<std::uint8_t>(63), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStructure);
  }
}

TEST(PartitionTest, BlockCountsAndOrder) {
  const ImageBuffer img = testing::random_image(256, 256, 1, 2);
  const BlockGrid grid = partition(img, 8);
  EXPECT_EQ(grid.blocks.size(), 1024U);
  EXPECT_EQ(grid.blocks_x, 32U);
  // Block 1 is to the right of block 0.
  EXPECT_EQ(grid.at(0, 1)[0], img.at(8, 0));
  EXPECT_EQ(grid.at(0, 32)[0], img.at(0, 8));
  EXPECT_EQ(grid.at(0, 33)[8 * 2 + 3], img.at(8 + 3, 8 + 2));
}

TEST(PartitionTest, PadsWithZeros) {
  ImageBuffer img(10, 10, 1);
  for (auto& p : img.pixels()) p = 200;
  const BlockGrid grid = partition(img, 8);
  EXPECT_EQ(grid.blocks.size(), 4U);
  EXPECT_EQ(grid.padded_width(), 16U);
  const Block& br = grid.at(0, 3);
  EXPECT_EQ(br[0], 200);
  EXPECT_EQ(br[1], 200);
  EXPECT_EQ(br[2], 0);
  EXPECT_EQ(br[8 * 2], 0);
  const ImageBuffer padded = assemble_padded(grid);
  EXPECT_EQ(padded.width(), 16U);
  EXPECT_EQ(padded.at(15, 15), 0);
  EXPECT_EQ(padded.at(9, 9), 200);
}

TEST(PartitionTest, RoundTrip) {
  for (std::size_t n : {8U, 16U, 32U}) {
    for (std::size_t ch : {1U, 3U}) {
      for (std::size_t size : {32U, 50U, 67U}) {
        const ImageBuffer img = testing::random_image(size, size + 3, ch, n + ch + size);
        const BlockGrid grid = partition(img, n);
        EXPECT_EQ(grid.blocks.size(), grid.blocks_per_channel() * ch);
        EXPECT_EQ(assemble(grid), img);
      }
    }
  }
}

TEST(PartitionTest, RejectsBadArguments) {
  const ImageBuffer img = testing::random_image(16, 16, 1, 0);
  EXPECT_THROW((void)partition(img, 4), Error);
  BlockGrid grid = partition(img, 8);
  grid.blocks.pop_back();
  try {
    (void)assemble(grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStructure);
  }
}

}  // namespace
}  // namespace bci
