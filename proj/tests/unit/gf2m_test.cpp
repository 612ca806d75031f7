#include "bci/gf2m.hpp"

#include <random>

#include <gtest/gtest.h>

#include "bci/error.hpp"
#include "test_support.hpp"

namespace bci {
namespace {

using testing::gf16_table;
using testing::toy_field;

constexpr int kIterations = 300;

BinaryField k163_field() { return BinaryField(FieldParams::from_exponents({163, 7, 6, 3, 0})); }

FieldElement random_element(const BinaryField& f, std::mt19937_64& rng) {
  std::vector<std::uint64_t> w(f.word_count());
  for (auto& x : w) x = rng();
  if (f.degree() % 64 != 0) w.back() &= (std::uint64_t{1} << (f.degree() % 64)) - 1;
  return f.from_words(w);
}

// a^(2^m - 2) by square-and-multiply; independent of the Euclidean inverse.
FieldElement fermat_inverse(const BinaryField& f, const FieldElement& a) {
  FieldElement result = f.one();
  FieldElement base = f.sqr(a);  // exponent bits 1..m-1 are set, bit 0 clear
  for (unsigned i = 1; i < f.degree(); ++i) {
    result = f.mul(result, base);
    base = f.sqr(base);
  }
  return result;
}

TEST(Gf2mTest, AddIsXor) {
  const BinaryField f = toy_field();
  EXPECT_EQ(f.add(f.from_uint(0b0110), f.from_uint(0b0011)), f.from_uint(0b0101));
  EXPECT_TRUE(f.add(f.from_uint(0b0010), f.from_uint(0b0010)).is_zero());
  for (unsigned c = 0; c < 16; ++c) EXPECT_EQ(f.add(f.zero(), f.from_uint(c)), f.from_uint(c));
}

TEST(Gf2mTest, MulExamples) {
  const BinaryField f = toy_field();
  EXPECT_EQ(f.mul(f.from_uint(0b0010), f.from_uint(0b0010)).low_word(), 0b0100U);
  EXPECT_EQ(f.mul(f.from_uint(0b1000), f.from_uint(0b0010)).low_word(), 0b0011U);
  for (unsigned a = 0; a < 16; ++a) EXPECT_EQ(f.mul(f.from_uint(a), f.one()), f.from_uint(a));
}

TEST(Gf2mTest, MulMatchesExhaustiveOracleTable) {
  const BinaryField f = toy_field();
  const auto table = gf16_table();
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      EXPECT_EQ(f.mul(f.from_uint(a), f.from_uint(b)).low_word(), table[a][b]) << a << "*" << b;
    }
  }
}

TEST(Gf2mTest, SqrExamples) {
  const BinaryField f = toy_field();
  EXPECT_TRUE(f.sqr(f.zero()).is_zero());
  EXPECT_TRUE(f.sqr(f.one()).is_one());
  // (x^3)^2 = x^6 = x^3 + x^2 under x^4 = x + 1; oracle value 12.
  EXPECT_EQ(f.sqr(f.from_uint(0b1000)).low_word(), 12U);
  EXPECT_EQ(f.sqr(f.from_uint(0b1000)).low_word(), gf16_table()[8][8]);
}

TEST(Gf2mTest, InverseExamples) {
  const BinaryField f = toy_field();
  EXPECT_TRUE(f.inv(f.one()).is_one());
  // Exhaustive search in the oracle table: x * 9 = 1.
  const auto table = gf16_table();
  unsigned expected = 0;
  for (unsigned b = 1; b < 16; ++b) {
    if (table[2][b] == 1) expected = b;
  }
  EXPECT_EQ(expected, 9U);
  EXPECT_EQ(f.inv(f.from_uint(2)).low_word(), expected);
  for (unsigned a = 1; a < 16; ++a) {
    EXPECT_EQ(f.inv(f.inv(f.from_uint(a))), f.from_uint(a));
    EXPECT_TRUE(f.mul(f.from_uint(a), f.inv(f.from_uint(a))).is_one());
  }
}

TEST(Gf2mTest, InverseOfZeroThrows) {
  const BinaryField f = toy_field();
  try {
    (void)f.inv(f.zero());
    FAIL() << "expected division-by-zero";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDivisionByZero);
  }
}

TEST(Gf2mTest, MismatchedFieldsThrow) {
  const BinaryField f4 = toy_field();
  const BinaryField f163 = k163_field();
  const BinaryField f4b(FieldParams::from_exponents({4, 3, 0}));
  for (auto op : {0, 1, 2}) {
    try {
      if (op == 0) (void)f4.add(f4.one(), f163.one());
      if (op == 1) (void)f4.mul(f4.one(), f4b.one());
      if (op == 2) (void)f163.sqr(f4.one());
      FAIL() << "expected parameter error for op " << op;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParameter);
    }
  }
  EXPECT_THROW((void)f4.add(FieldElement{}, f4.one()), Error);
}

TEST(Gf2mTest, HexExamples) {
  const BinaryField f = toy_field();
  EXPECT_EQ(f.from_hex("0b").low_word(), 0b1011U);
  EXPECT_TRUE(f.from_hex("00").is_zero());
  EXPECT_EQ(f.from_hex("B"), f.from_uint(11));
  EXPECT_EQ(f.to_hex(f.from_uint(11)), "b");
  EXPECT_EQ(k163_field().to_hex(k163_field().one()).size(), 41U);
}

TEST(Gf2mTest, HexRejectsBadInput) {
  const BinaryField f = toy_field();
  for (const char* bad : {"", "0x1", "g", "10", "1f", " 1"}) {
    try {
      (void)f.from_hex(bad);
      FAIL() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kFormat) << bad;
    }
  }
}

TEST(Gf2mTest, HexRoundTripProperty) {
  std::mt19937_64 rng(11);
  for (const BinaryField& f : {toy_field(), k163_field(), BinaryField(FieldParams::from_exponents({571, 10, 5, 2, 0}))}) {
    for (int i = 0; i < 100; ++i) {
      const FieldElement a = random_element(f, rng);
      EXPECT_EQ(f.from_hex(f.to_hex(a)), a);
    }
  }
}

TEST(Gf2mTest, FieldParamsValidation) {
  EXPECT_THROW(BinaryField(FieldParams::from_exponents({4, 2, 0})), Error);   // x^4+x^2+1 = (x^2+x+1)^2
  EXPECT_THROW(BinaryField(FieldParams::from_exponents({1, 0})), Error);      // m < 2
  EXPECT_THROW(BinaryField(FieldParams::from_exponents({4, 1})), Error);      // no constant term
  EXPECT_THROW(BinaryField(FieldParams::from_exponents({572, 1, 0})), Error); // m > 571
  EXPECT_NO_THROW(BinaryField(FieldParams::from_exponents({20, 3, 0})));
  EXPECT_THROW(BinaryField(FieldParams::from_exponents({20, 2, 0})), Error);  // x^20+x^2+1 = (x^10+x+1)^2
  EXPECT_EQ(FieldParams::from_hex(4, "13"), FieldParams::from_exponents({4, 1, 0}));
  EXPECT_EQ(FieldParams::from_exponents({163, 7, 6, 3, 0}).reduction_hex(), "800000000000000000000000000000000000000c9");
}

TEST(Gf2mTest, IrreducibilityOracleSmallDegrees) {
  // Irreducible counts over GF(2) for degrees 2..8: 1, 2, 3, 6, 9, 18, 30.
  const int expected[] = {1, 2, 3, 6, 9, 18, 30};
  for (unsigned deg = 2; deg <= 8; ++deg) {
    int count = 0;
    for (std::uint64_t p = 1ULL << deg; p < (2ULL << deg); ++p) count += is_irreducible_small(p);
    EXPECT_EQ(count, expected[deg - 2]) << "degree " << deg;
  }
}

struct FieldCase {
  const char* name;
  FieldParams params;
};

class Gf2mPropertyTest : public ::testing::TestWithParam<FieldCase> {};

TEST_P(Gf2mPropertyTest, AlgebraicLaws) {
  const BinaryField f(GetParam().params);
  std::mt19937_64 rng(f.degree());
  for (int i = 0; i < kIterations; ++i) {
    const FieldElement a = random_element(f, rng);
    const FieldElement b = random_element(f, rng);
    const FieldElement c = random_element(f, rng);
    EXPECT_TRUE(f.add(a, a).is_zero());
    EXPECT_EQ(f.add(a, f.zero()), a);
    EXPECT_EQ(f.add(a, b), f.add(b, a));
    EXPECT_EQ(f.mul(a, b), f.mul(b, a));
    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    EXPECT_EQ(f.sqr(a), f.mul(a, a));
    EXPECT_EQ(f.sqr(f.add(a, b)), f.add(f.sqr(a), f.sqr(b)));
    if (!a.is_zero()) {
      const FieldElement ai = f.inv(a);
      EXPECT_TRUE(f.mul(a, ai).is_one());
      if (i < 20) {
        EXPECT_EQ(ai, fermat_inverse(f, a));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Fields, Gf2mPropertyTest,
    ::testing::Values(FieldCase{"m4", FieldParams::from_exponents({4, 1, 0})},
                      FieldCase{"m63", FieldParams::from_exponents({63, 1, 0})},
                      FieldCase{"m64", FieldParams::from_exponents({64, 4, 3, 1, 0})},
                      FieldCase{"m127", FieldParams::from_exponents({127, 1, 0})},
                      FieldCase{"m163", FieldParams::from_exponents({163, 7, 6, 3, 0})},
                      FieldCase{"m233", FieldParams::from_exponents({233, 74, 0})},
                      FieldCase{"m571", FieldParams::from_exponents({571, 10, 5, 2, 0})}),
    [](const ::testing::TestParamInfo<FieldCase>& info) { return info.param.name; });

// Bitwise reference multiply for the large fields: shift-and-add with a
// reduction step after every shift.
TEST(Gf2mTest, MulMatchesBitSerialReference) {
  const BinaryField f = k163_field();
  std::mt19937_64 rng(5);
  const auto times_x = [&](FieldElement v) {
    // v * x = v shifted, reduced by f when bit 163 appears
    std::vector<std::uint64_t> w(v.words().begin(), v.words().begin() + 3);
    const bool carry = (w[2] >> 34) & 1U;
    w[2] = (w[2] << 1 | w[1] >> 63) & ((1ULL << 35) - 1);
    w[1] = w[1] << 1 | w[0] >> 63;
    w[0] <<= 1;
    if (carry) w[0] ^= 0xc9;
    return f.from_words(w);
  };
  for (int i = 0; i < 50; ++i) {
    const FieldElement a = random_element(f, rng);
    const FieldElement b = random_element(f, rng);
    FieldElement acc = f.zero();
    FieldElement shifted = a;
    for (unsigned bit = 0; bit < 163; ++bit) {
      if (b.bit(bit)) acc = f.add(acc, shifted);
      shifted = times_x(shifted);
    }
    EXPECT_EQ(f.mul(a, b), acc);
  }
}

}  // namespace
}  // namespace bci
