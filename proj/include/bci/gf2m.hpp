#pragma once

// Arithmetic in GF(2^m), polynomial basis.
//
// Elements are packed little-endian into 64-bit words: bit i of the vector
// is the coefficient of x^i. Every element carries a tag identifying the
// field it was created in; mixing elements of different fields raises a
// parameter error instead of silently producing garbage.
//
// Nothing here is constant time.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bci {

inline constexpr unsigned kMinFieldDegree = 2;
inline constexpr unsigned kMaxFieldDegree = 571;
// Enough words for a degree-571 reduction polynomial (572 bits).
inline constexpr std::size_t kMaxFieldWords = 9;
// Irreducibility is only checked exhaustively up to this degree.
inline constexpr unsigned kMaxCheckedIrreducibleDegree = 20;

using PolyWords = std::array<std::uint64_t, kMaxFieldWords>;

class FieldElement {
 public:
  FieldElement() = default;

  std::span<const std::uint64_t> words() const { return {words_.data(), words_.size()}; }
  bool is_zero() const;
  bool is_one() const;
  bool bit(std::size_t i) const;
  // Low 64 coefficients; convenient for toy fields.
  std::uint64_t low_word() const { return words_[0]; }
  std::uint64_t field_tag() const { return tag_; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  friend class BinaryField;
  PolyWords words_{};
  std::uint64_t tag_ = 0;
};

struct FieldParams {
  unsigned m = 0;
  PolyWords reduction{};  // bits 0..m; bit m and bit 0 must be set

  // poly_hex is the full reduction polynomial including the x^m term.
  static FieldParams from_hex(unsigned m, std::string_view poly_hex);
  // Exponents of the nonzero terms, e.g. {163, 7, 6, 3, 0}.
  static FieldParams from_exponents(std::initializer_list<unsigned> exponents);

  std::string reduction_hex() const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

// True iff the polynomial (given as a bit mask, degree <= 63) has no factor of
// degree 1..deg/2. Trial division; intended for small degrees.
bool is_irreducible_small(std::uint64_t poly);

class BinaryField {
 public:
  // Validates 2 <= m <= 571, the shape of the reduction polynomial, and for
  // m <= 20 its irreducibility. Throws Error(kParameter) otherwise.
  explicit BinaryField(const FieldParams& params);

  const FieldParams& params() const { return params_; }
  unsigned degree() const { return params_.m; }
  std::size_t word_count() const { return words_; }
  std::uint64_t tag() const { return tag_; }

  FieldElement zero() const;
  FieldElement one() const;
  // Value must fit in m bits.
  FieldElement from_uint(std::uint64_t value) const;
  // Little-endian words; bits at or above m must be clear.
  FieldElement from_words(std::span<const std::uint64_t> words) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement sqr(const FieldElement& a) const;
  // Extended binary Euclidean algorithm. Throws Error(kDivisionByZero) on 0.
  FieldElement inv(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }

  // Big-endian hex, leading zeros allowed, any case. Throws Error(kFormat)
  // on non-hex input or values >= 2^m.
  FieldElement from_hex(std::string_view hex) const;
  // Fixed width ceil(m/4) lowercase digits.
  std::string to_hex(const FieldElement& a) const;

  // ceil(m/8) bytes, big-endian.
  std::vector<std::uint8_t> to_bytes(const FieldElement& a) const;

  friend bool operator==(const BinaryField& lhs, const BinaryField& rhs) {
    return lhs.params_ == rhs.params_;
  }

 private:
  void check(const FieldElement& a) const;
  void reduce(std::uint64_t* c, std::size_t len, FieldElement& out) const;

  FieldParams params_;
  std::size_t words_ = 0;
  std::uint64_t top_mask_ = 0;
  std::vector<unsigned> low_terms_;  // exponents < m with coefficient 1
  std::uint64_t tag_ = 0;
};

}  // namespace bci
