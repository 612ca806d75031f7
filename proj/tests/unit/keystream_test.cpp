#include "bci/keystream.hpp"

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "bci/error.hpp"
#include "test_support.hpp"

namespace bci {
namespace {

using testing::toy_curve;

TEST(ChaoticMapTest, FirstStepFromPointThree) {
  ChaoticMap map(0.3);
  EXPECT_TRUE(map.step());
  EXPECT_NEAR(map.state(), 0.84, 1e-15);
  EXPECT_EQ(map.step_index(), 1U);
  // 4 * 0.84 * 0.16 = 0.5376
  EXPECT_TRUE(map.step());
  EXPECT_NEAR(map.state(), 0.5376, 1e-14);
}

TEST(ChaoticMapTest, ThresholdIsStrict) {
  // r = 2 fixes 0.5; the bit is 1 only for states strictly above 0.5.
  ChaoticMap fixed = ChaoticMap::unchecked(0.5, 2.0);
  EXPECT_FALSE(fixed.step());
  EXPECT_EQ(fixed.state(), 0.5);

  ChaoticMap top = ChaoticMap::unchecked(0.5, 4.0);
  EXPECT_TRUE(top.step());
  EXPECT_EQ(top.state(), 1.0);
  EXPECT_FALSE(top.step());
  EXPECT_EQ(top.state(), 0.0);
}

TEST(ChaoticMapTest, DeterministicStream) {
  ChaoticMap a(0.123456789);
  ChaoticMap b(0.123456789);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.step(), b.step()) << i;
  EXPECT_EQ(a.state(), b.state());
}

TEST(ChaoticMapTest, SeedValidation) {
  for (double bad : {0.0, 1.0, 0.25, 0.5, 0.75, -0.1, 1.5, 1e-15, std::nan("")}) {
    try {
      ChaoticMap m(bad);
      FAIL() << "accepted seed " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kKey);
    }
  }
  EXPECT_THROW(ChaoticMap(0.3, 0.0), Error);
  EXPECT_THROW(ChaoticMap(0.3, 4.5), Error);
  EXPECT_NO_THROW(ChaoticMap(0.3, 3.99));
}

TEST(ChaoticMapTest, MonobitBalance) {
  ChaoticMap m(0.3141592653589793);
  int ones = 0;
  constexpr int kBits = 100000;
  for (int i = 0; i < kBits; ++i) ones += m.step();
  const double frac = static_cast<double>(ones) / kBits;
  EXPECT_GE(frac, 0.48);
  EXPECT_LE(frac, 0.52);
}

class ForcedBitTest : public ::testing::TestWithParam<bool> {};

TEST_P(ForcedBitTest, ClosedFormOnToyCurve) {
  const EllipticCurve e = toy_curve();
  const auto pts = e.enumerate_points();
  const CurvePoint g = pts[2];
  const CurvePoint u0 = pts[5];
  ChaosEcPrng prng(e, g, u0, ChaoticMap(0.3));
  const bool b = GetParam();
  prng.force_bit(b);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    EXPECT_EQ(prng.index(), i);
    EXPECT_EQ(prng.next_point(), e.add(e.scalar_mul(i * (b ? 2 : 1), g), u0)) << "i=" << i;
  }
  EXPECT_EQ(prng.chaos().step_index(), 0U);
}

TEST_P(ForcedBitTest, ClosedFormOnSect163k1) {
  const NamedCurve k163 = named_curve("sect163k1");
  const CurvePoint u0 = k163.curve.scalar_mul(987654321, k163.generator);
  ChaosEcPrng prng(k163.curve, k163.generator, u0, ChaoticMap(0.3));
  const bool b = GetParam();
  prng.force_bit(b);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    const CurvePoint expected = k163.curve.add(k163.curve.scalar_mul(i * (b ? 2 : 1), k163.generator), u0);
    EXPECT_EQ(prng.next_point(), expected) << "i=" << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Bits, ForcedBitTest, ::testing::Bool());

TEST(ChaosEcPrngTest, UnforcedStreamFollowsChaoticBits) {
  const NamedCurve k163 = named_curve("sect163k1");
  const CurvePoint u0 = k163.curve.scalar_mul(55, k163.generator);
  ChaosEcPrng prng(k163.curve, k163.generator, u0, ChaoticMap(0.7071));
  ChaoticMap shadow(0.7071);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    const std::uint64_t k = i * (shadow.step() ? 2 : 1);
    EXPECT_EQ(prng.next_point(), k163.curve.add(k163.curve.scalar_mul(k, k163.generator), u0));
  }
}

TEST(ChaosEcPrngTest, ToyPointsStayOnCurve) {
  const EllipticCurve e = toy_curve();
  const auto pts = e.enumerate_points();
  ChaosEcPrng prng(e, pts[2], pts[5], ChaoticMap(0.3));
  for (int i = 0; i < 500; ++i) EXPECT_TRUE(e.contains(prng.next_point()));
}

TEST(ChaosEcPrngTest, RejectsOffCurvePoints) {
  const EllipticCurve e = toy_curve();
  const NamedCurve k163 = named_curve("sect163k1");
  EXPECT_THROW(ChaosEcPrng(e, k163.generator, e.enumerate_points()[1], ChaoticMap(0.3)), Error);
}

TEST(ChaosEcPrngTest, BytesPerPoint) {
  EXPECT_EQ(key_bytes_per_point(4), 1U);
  EXPECT_EQ(key_bytes_per_point(8), 1U);
  EXPECT_EQ(key_bytes_per_point(163), 20U);
  EXPECT_EQ(key_bytes_per_point(571), 71U);

  const NamedCurve k163 = named_curve("sect163k1");
  ChaosEcPrng prng(k163.curve, k163.generator, k163.generator, ChaoticMap(0.3));
  EXPECT_EQ(prng.bytes_per_point(), 20U);
  (void)prng.next_bytes(20);
  EXPECT_EQ(prng.index(), 2U);
  (void)prng.next_bytes(1);
  EXPECT_EQ(prng.index(), 3U);
}

TEST(ChaosEcPrngTest, ByteIsLowOrderXBigEndian) {
  const NamedCurve k163 = named_curve("sect163k1");
  const EllipticCurve& e = k163.curve;
  const CurvePoint u0 = e.scalar_mul(3, k163.generator);
  ChaosEcPrng prng(e, k163.generator, u0, ChaoticMap(0.3));
  ChaosEcPrng shadow(e, k163.generator, u0, ChaoticMap(0.3));
  const std::vector<std::uint8_t> got = prng.next_bytes(20);
  const std::vector<std::uint8_t> x = e.field().to_bytes(shadow.next_point().x());
  ASSERT_EQ(x.size(), 21U);
  EXPECT_EQ(got, std::vector<std::uint8_t>(x.begin() + 1, x.end()));
}

TEST(ChaosEcPrngTest, SplitReadsMatchSingleRead) {
  const NamedCurve k163 = named_curve("sect163k1");
  ChaosEcPrng a(k163.curve, k163.generator, k163.generator, ChaoticMap(0.4));
  ChaosEcPrng b(k163.curve, k163.generator, k163.generator, ChaoticMap(0.4));
  const std::vector<std::uint8_t> whole = a.next_bytes(333);
  std::vector<std::uint8_t> parts;
  for (std::size_t n : {1, 19, 20, 21, 7, 265}) {
    const auto chunk = b.next_bytes(n);
    parts.insert(parts.end(), chunk.begin(), chunk.end());
  }
  EXPECT_EQ(parts, whole);
}

TEST(ChaosEcPrngTest, ZeroLengthReadThrows) {
  const NamedCurve k163 = named_curve("sect163k1");
  ChaosEcPrng prng(k163.curve, k163.generator, k163.generator, ChaoticMap(0.4));
  try {
    (void)prng.next_bytes(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
}

TEST(ChaosEcPrngTest, ToyStreamSkipsInfinity) {
  // With the bit forced to 0 and U0 = -G, U_1 is infinity and contributes no byte.
  const EllipticCurve e = toy_curve();
  const auto pts = e.enumerate_points();
  const CurvePoint g = pts[2];
  ChaosEcPrng prng(e, g, e.negate(g), ChaoticMap(0.3));
  prng.force_bit(false);
  const auto bytes = prng.next_bytes(1);
  EXPECT_EQ(prng.index(), 3U);
  EXPECT_EQ(bytes[0], e.add(e.scalar_mul(2, g), e.negate(g)).x().low_word());
}

TEST(ChaosEcPrngTest, ByteHistogramIsFlat) {
  const auto km = testing::test_key(1, 1, 32);
  const KeyBlocks blocks = derive_block_keys(km, 0, 256);
  std::array<std::size_t, 256> hist{};
  for (std::uint8_t v : blocks.bytes()) ++hist[v];
  const double uniform = static_cast<double>(blocks.bytes().size()) / 256.0;
  for (std::size_t v = 0; v < 256; ++v) {
    EXPECT_LT(hist[v], 2 * uniform) << v;
    EXPECT_GT(hist[v], 0U) << v;
  }
}

TEST(BlockKeysTest, DeterministicAndSized) {
  const auto km = testing::test_key(3, 2, 16);
  const KeyBlocks a = derive_block_keys(km, 1, 5);
  const KeyBlocks b = derive_block_keys(km, 1, 5);
  EXPECT_EQ(a.size(), 5U);
  EXPECT_EQ(a.block_len(), 256U);
  EXPECT_EQ(a.bytes().size(), 5U * 256U);
  EXPECT_TRUE(std::equal(a.bytes().begin(), a.bytes().end(), b.bytes().begin()));

  // Prefix property: fewer blocks is a prefix of more blocks.
  const KeyBlocks c = derive_block_keys(km, 1, 2);
  EXPECT_TRUE(std::equal(c.bytes().begin(), c.bytes().end(), a.bytes().begin()));
}

TEST(BlockKeysTest, ChannelsAreIndependent) {
  const auto km = testing::test_key(3, 1, 8);
  const KeyBlocks r = derive_block_keys(km, 0, 1);
  const KeyBlocks g = derive_block_keys(km, 1, 1);
  const KeyBlocks b = derive_block_keys(km, 2, 1);
  const auto same = [](const KeyBlocks& x, const KeyBlocks& y) {
    return std::equal(x.bytes().begin(), x.bytes().end(), y.bytes().begin());
  };
  EXPECT_FALSE(same(r, g));
  EXPECT_FALSE(same(g, b));
  EXPECT_FALSE(same(r, b));
}

TEST(BlockKeysTest, BadArgumentsThrow) {
  const auto km = testing::test_key(1, 1, 8);
  for (auto call : {+[](const KeyMaterial& k) { (void)derive_block_keys(k, 1, 1); },
                    +[](const KeyMaterial& k) { (void)derive_block_keys(k, 0, 0); }}) {
    try {
      call(km);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParameter);
    }
  }
}

TEST(BlockKeysTest, BlockSizes) {
  for (unsigned n : {8U, 16U, 32U}) EXPECT_TRUE(is_valid_block_size(n));
  for (unsigned n : {0U, 4U, 12U, 64U}) EXPECT_FALSE(is_valid_block_size(n));
}

}  // namespace
}  // namespace bci
