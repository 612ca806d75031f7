#include "bci/gf2m.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bci/error.hpp"

namespace bci {
namespace {

constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Parses big-endian hex into little-endian words. Returns false on a bad
// digit or when the value needs more than out.size() words.
bool parse_hex_words(std::string_view hex, std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  if (hex.empty()) return false;
  std::size_t nibble = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
    const int v = hex_value(*it);
    if (v < 0) return false;
    if (v == 0) continue;
    const std::size_t word = nibble / 16;
    if (word >= out.size()) return false;
    out[word] |= static_cast<std::uint64_t>(v) << (4 * (nibble % 16));
  }
  return true;
}

int degree_of(std::span<const std::uint64_t> w) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] != 0) return static_cast<int>(64 * i) + 63 - std::countl_zero(w[i]);
  }
  return -1;
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// 8-bit -> 16-bit bit spreading for squaring.
constexpr std::array<std::uint16_t, 256> kSpread = [] {
  std::array<std::uint16_t, 256> t{};
  for (unsigned v = 0; v < 256; ++v) {
    std::uint16_t r = 0;
    for (unsigned b = 0; b < 8; ++b) {
      if (v >> b & 1U) r |= static_cast<std::uint16_t>(1U << (2 * b));
    }
    t[v] = r;
  }
  return t;
}();

std::uint64_t spread32(std::uint32_t v) {
  return static_cast<std::uint64_t>(kSpread[v & 0xff]) |
         static_cast<std::uint64_t>(kSpread[(v >> 8) & 0xff]) << 16 |
         static_cast<std::uint64_t>(kSpread[(v >> 16) & 0xff]) << 32 |
         static_cast<std::uint64_t>(kSpread[(v >> 24) & 0xff]) << 48;
}

void xor_at(std::uint64_t* c, std::uint64_t w, std::size_t pos) {
  const std::size_t q = pos / 64;
  const unsigned r = pos % 64;
  c[q] ^= w << r;
  if (r != 0) c[q + 1] ^= w >> (64 - r);
}

// In-place right shift by one over n words.
void shr1(std::uint64_t* w, std::size_t n) {
  for (std::size_t i = 0; i + 1 < n; ++i) w[i] = (w[i] >> 1) | (w[i + 1] << 63);
  w[n - 1] >>= 1;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kDivisionByZero: return "division by zero";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kCapability: return "capability error";
    case ErrorKind::kUnsupportedFormat: return "unsupported format";
    case ErrorKind::kUnsupportedDepth: return "unsupported depth";
    case ErrorKind::kCorruptFile: return "corrupt file";
    case ErrorKind::kStructure: return "structure error";
    case ErrorKind::kKey: return "key error";
    case ErrorKind::kEnvelope: return "envelope error";
    case ErrorKind::kDegenerateVariance: return "degenerate variance";
    case ErrorKind::kIo: return "I/O error";
  }
  return "error";
}

bool FieldElement::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool FieldElement::is_one() const {
  return words_[0] == 1 &&
         std::all_of(words_.begin() + 1, words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool FieldElement::bit(std::size_t i) const {
  return i < 64 * kMaxFieldWords && (words_[i / 64] >> (i % 64) & 1U) != 0;
}

FieldParams FieldParams::from_hex(unsigned m, std::string_view poly_hex) {
  FieldParams p;
  p.m = m;
  if (!parse_hex_words(poly_hex, p.reduction)) {
    throw Error(ErrorKind::kFormat, "reduction polynomial is not valid hex or too large");
  }
  return p;
}

FieldParams FieldParams::from_exponents(std::initializer_list<unsigned> exponents) {
  FieldParams p;
  for (unsigned e : exponents) {
    if (e >= 64 * kMaxFieldWords) throw Error(ErrorKind::kParameter, "exponent out of range");
    p.reduction[e / 64] ^= std::uint64_t{1} << (e % 64);
    p.m = std::max(p.m, e);
  }
  return p;
}

std::string FieldParams::reduction_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (static_cast<std::size_t>(m) + 1 + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t n = 0; n < digits; ++n) {
    out[digits - 1 - n] = kDigits[(reduction[n / 16] >> (4 * (n % 16))) & 0xf];
  }
  return out;
}

bool is_irreducible_small(std::uint64_t poly) {
  const int deg = 63 - std::countl_zero(poly | 1);
  if (deg < 1) return false;
  for (std::uint64_t d = 2; d < (std::uint64_t{1} << (deg / 2 + 1)); ++d) {
    const int dd = 63 - std::countl_zero(d);
    std::uint64_t r = poly;
    for (int i = deg; i >= dd; --i) {
      if (r >> i & 1U) r ^= d << (i - dd);
    }
    if (r == 0) return false;
  }
  return true;
}

BinaryField::BinaryField(const FieldParams& params) : params_(params) {
  const unsigned m = params.m;
  if (m < kMinFieldDegree || m > kMaxFieldDegree) {
    throw Error(ErrorKind::kParameter, "field degree must be in [2, 571], got " + std::to_string(m));
  }
  if (degree_of(params.reduction) != static_cast<int>(m) || (params.reduction[0] & 1U) == 0) {
    throw Error(ErrorKind::kParameter,
                "reduction polynomial must have degree m and a constant term");
  }
  if (m <= kMaxCheckedIrreducibleDegree && !is_irreducible_small(params.reduction[0])) {
    throw Error(ErrorKind::kParameter, "reduction polynomial is reducible");
  }
  words_ = words_for_bits(m);
  top_mask_ = (m % 64 == 0) ? ~std::uint64_t{0} : (std::uint64_t{1} << (m % 64)) - 1;
  for (unsigned e = 0; e < m; ++e) {
    if (params.reduction[e / 64] >> (e % 64) & 1U) low_terms_.push_back(e);
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, m);
  for (std::uint64_t w : params.reduction) h = fnv1a(h, w);
  tag_ = h | 1;  // never 0, which marks default-constructed elements
}

void BinaryField::check(const FieldElement& a) const {
  if (a.tag_ != tag_) {
    throw Error(ErrorKind::kParameter, "field element belongs to a different field");
  }
}

FieldElement BinaryField::zero() const {
  FieldElement e;
  e.tag_ = tag_;
  return e;
}

FieldElement BinaryField::one() const { return from_uint(1); }

FieldElement BinaryField::from_uint(std::uint64_t value) const {
  const std::uint64_t words[1] = {value};
  return from_words(words);
}

FieldElement BinaryField::from_words(std::span<const std::uint64_t> words) const {
  FieldElement e = zero();
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] == 0) continue;
    const bool fits = i < words_ && (i + 1 < words_ || (words[i] & ~top_mask_) == 0);
    if (!fits) throw Error(ErrorKind::kParameter, "value does not fit in m bits");
    e.words_[i] = words[i];
  }
  return e;
}

FieldElement BinaryField::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement r = a;
  for (std::size_t i = 0; i < words_; ++i) r.words_[i] ^= b.words_[i];
  return r;
}

// Reduces the len-word polynomial c (destroyed) modulo the reduction
// polynomial, working one word at a time from the top.
void BinaryField::reduce(std::uint64_t* c, std::size_t len, FieldElement& out) const {
  const unsigned m = params_.m;
  const std::size_t boundary = m / 64;
  for (std::size_t i = len; i-- > boundary;) {
    for (;;) {
      std::uint64_t w;
      std::size_t base;
      if (i == boundary) {
        w = c[i] >> (m % 64);
        base = m;
        c[i] = (m % 64 == 0) ? 0 : c[i] & top_mask_;
      } else {
        w = c[i];
        base = 64 * i;
        c[i] = 0;
      }
      if (w == 0) break;
      for (unsigned t : low_terms_) xor_at(c, w, base - m + t);
    }
  }
  for (std::size_t i = 0; i < words_; ++i) out.words_[i] = c[i];
}

FieldElement BinaryField::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  const std::size_t n = words_;

  // table[u] = u(x) * a for every 4-bit polynomial u; n + 1 words each.
  std::array<std::array<std::uint64_t, kMaxFieldWords + 1>, 16> table{};
  for (std::size_t i = 0; i < n; ++i) table[1][i] = a.words_[i];
  for (unsigned u = 2; u < 16; u += 2) {
    const auto& half = table[u / 2];
    auto& t = table[u];
    for (std::size_t i = n + 1; i-- > 0;) {
      t[i] = (half[i] << 1) | (i > 0 ? half[i - 1] >> 63 : 0);
    }
    for (std::size_t i = 0; i <= n; ++i) table[u + 1][i] = t[i] ^ table[1][i];
  }

  // Left-to-right comb over the nibbles of b.
  std::array<std::uint64_t, 2 * kMaxFieldWords + 1> c{};
  for (int j = 15; j >= 0; --j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& t = table[(b.words_[i] >> (4 * j)) & 0xf];
      for (std::size_t k = 0; k <= n; ++k) c[i + k] ^= t[k];
    }
    if (j != 0) {
      for (std::size_t k = 2 * n; k-- > 1;) c[k] = (c[k] << 4) | (c[k - 1] >> 60);
      c[0] <<= 4;
    }
  }

  FieldElement r = zero();
  reduce(c.data(), 2 * n, r);
  return r;
}

FieldElement BinaryField::sqr(const FieldElement& a) const {
  check(a);
  std::array<std::uint64_t, 2 * kMaxFieldWords + 1> c{};
  for (std::size_t i = 0; i < words_; ++i) {
    c[2 * i] = spread32(static_cast<std::uint32_t>(a.words_[i]));
    c[2 * i + 1] = spread32(static_cast<std::uint32_t>(a.words_[i] >> 32));
  }
  FieldElement r = zero();
  reduce(c.data(), 2 * words_, r);
  return r;
}

FieldElement BinaryField::inv(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorKind::kDivisionByZero, "inverse of zero");

  // u, v may hold the full reduction polynomial (m + 1 bits).
  const std::size_t n = words_for_bits(params_.m + 1);
  PolyWords u = a.words_;
  PolyWords v = params_.reduction;
  PolyWords g1{};
  PolyWords g2{};
  g1[0] = 1;
  const auto is_one = [n](const PolyWords& w) {
    if (w[0] != 1) return false;
    for (std::size_t i = 1; i < n; ++i) {
      if (w[i] != 0) return false;
    }
    return true;
  };
  const auto halve = [&](PolyWords& x, PolyWords& g) {
    while ((x[0] & 1U) == 0) {
      shr1(x.data(), n);
      if (g[0] & 1U) {
        for (std::size_t i = 0; i < n; ++i) g[i] ^= params_.reduction[i];
      }
      shr1(g.data(), n);
    }
  };

  while (!is_one(u) && !is_one(v)) {
    halve(u, g1);
    halve(v, g2);
    if (is_one(u) || is_one(v)) break;
    const std::span<const std::uint64_t> us(u.data(), n);
    const std::span<const std::uint64_t> vs(v.data(), n);
    if (degree_of(us) > degree_of(vs)) {
      for (std::size_t i = 0; i < n; ++i) {
        u[i] ^= v[i];
        g1[i] ^= g2[i];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        v[i] ^= u[i];
        g2[i] ^= g1[i];
      }
    }
  }

  FieldElement r = zero();
  const PolyWords& g = is_one(u) ? g1 : g2;
  for (std::size_t i = 0; i < words_; ++i) r.words_[i] = g[i];
  return r;
}

FieldElement BinaryField::from_hex(std::string_view hex) const {
  PolyWords w{};
  if (!parse_hex_words(hex, w)) {
    throw Error(ErrorKind::kFormat, "invalid field element hex '" + std::string(hex) + "'");
  }
  if (degree_of(w) >= static_cast<int>(params_.m)) {
    throw Error(ErrorKind::kFormat, "field element hex '" + std::string(hex) + "' exceeds 2^m");
  }
  FieldElement e = zero();
  e.words_ = w;
  return e;
}

std::string BinaryField::to_hex(const FieldElement& a) const {
  check(a);
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (params_.m + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t n = 0; n < digits; ++n) {
    out[digits - 1 - n] = kDigits[(a.words_[n / 16] >> (4 * (n % 16))) & 0xf];
  }
  return out;
}

std::vector<std::uint8_t> BinaryField::to_bytes(const FieldElement& a) const {
  check(a);
  const std::size_t len = (params_.m + 7) / 8;
  std::vector<std::uint8_t> out(len);
  for (std::size_t n = 0; n < len; ++n) {
    out[len - 1 - n] = static_cast<std::uint8_t>(a.words_[n / 8] >> (8 * (n % 8)));
  }
  return out;
}

}  // namespace bci
