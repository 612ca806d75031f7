#include "bci/keystream.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bci/error.hpp"

namespace bci {

namespace {
constexpr double kSeedMargin = 1e-14;
}

void validate_chaos_seed(double seed, double r) {
  if (!std::isfinite(r) || !(r > 0.0 && r <= 4.0)) {
    throw Error(ErrorKind::kKey, "chaos parameter r must lie in (0, 4]");
  }
  if (!std::isfinite(seed) || !(seed > kSeedMargin && seed < 1.0 - kSeedMargin)) {
    throw Error(ErrorKind::kKey, "chaos seed must lie in (1e-14, 1 - 1e-14)");
  }
  if (seed == 0.25 || seed == 0.5 || seed == 0.75) {
    throw Error(ErrorKind::kKey, "chaos seed is a fixed point or short cycle of the map");
  }
}

ChaoticMap::ChaoticMap(double seed, double r) : state_(seed), r_(r) {
  validate_chaos_seed(seed, r);
}

ChaoticMap ChaoticMap::unchecked(double state, double r) {
  ChaoticMap m;
  m.state_ = state;
  m.r_ = r;
  return m;
}

bool ChaoticMap::step() {
  const double scaled = r_ * state_;
  const double complement = 1.0 - state_;
  state_ = scaled * complement;
  ++steps_;
  return state_ > 0.5;
}

std::size_t key_bytes_per_point(unsigned m) { return std::max<std::size_t>(1, m / 8); }

ChaosEcPrng::ChaosEcPrng(EllipticCurve curve, CurvePoint g, CurvePoint u0, ChaoticMap chaos)
    : curve_(std::move(curve)),
      g_(std::move(g)),
      u0_(std::move(u0)),
      chaos_(chaos),
      bytes_per_point_(key_bytes_per_point(curve_.field().degree())) {
  if (!curve_.contains(g_)) throw Error(ErrorKind::kKey, "base point G is not on the curve");
  if (!curve_.contains(u0_)) throw Error(ErrorKind::kKey, "initial point U0 is not on the curve");
}

CurvePoint ChaosEcPrng::next_point() {
  const bool bit = forced_bit_ ? *forced_bit_ : chaos_.step();
  multiple_ = curve_.add(multiple_, g_);  // [i]G
  const CurvePoint scaled = bit ? curve_.dbl(multiple_) : multiple_;
  ++index_;
  return curve_.add(scaled, u0_);
}

void ChaosEcPrng::append_point_bytes(const CurvePoint& p) {
  const std::vector<std::uint8_t> x = curve_.field().to_bytes(p.x());
  pool_.insert(pool_.end(), x.end() - static_cast<std::ptrdiff_t>(bytes_per_point_), x.end());
}

void ChaosEcPrng::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (pool_head_ == pool_.size()) {
      pool_.clear();
      pool_head_ = 0;
      const CurvePoint p = next_point();
      if (p.is_infinity()) continue;
      append_point_bytes(p);
    }
    const std::size_t take = std::min(out.size() - written, pool_.size() - pool_head_);
    std::copy_n(pool_.begin() + static_cast<std::ptrdiff_t>(pool_head_), take,
                out.begin() + static_cast<std::ptrdiff_t>(written));
    pool_head_ += take;
    written += take;
  }
}

std::vector<std::uint8_t> ChaosEcPrng::next_bytes(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kParameter, "next_bytes requires n >= 1");
  std::vector<std::uint8_t> out(n);
  fill(out);
  return out;
}

bool is_valid_block_size(unsigned n) {
  return std::find(std::begin(kBlockSizes), std::end(kBlockSizes), n) != std::end(kBlockSizes);
}

void KeyMaterial::validate() const {
  if (scheme != 1 && scheme != 2) throw Error(ErrorKind::kKey, "scheme must be 1 or 2");
  if (!is_valid_block_size(block_size)) {
    throw Error(ErrorKind::kKey, "block size must be 8, 16 or 32");
  }
  if (generator.is_infinity() || !curve.contains(generator)) {
    throw Error(ErrorKind::kKey, "base point G must be an affine point on the curve");
  }
  if (u0.size() != 1 && u0.size() != 3) {
    throw Error(ErrorKind::kKey, "key must carry 1 (grayscale) or 3 (RGB) U0 points");
  }
  for (const CurvePoint& p : u0) {
    if (!curve.contains(p)) throw Error(ErrorKind::kKey, "U0 point is not on the curve");
  }
  if (u0.size() == 3 && (u0[0] == u0[1] || u0[0] == u0[2] || u0[1] == u0[2])) {
    throw Error(ErrorKind::kKey, "RGB keys need three distinct U0 points");
  }
  validate_chaos_seed(chaos_seed, chaos_r);
  if (!iv.empty() && iv.size() != block_bytes()) {
    throw Error(ErrorKind::kKey, "IV must be block_size^2 = " + std::to_string(block_bytes()) +
                                     " bytes, got " + std::to_string(iv.size()));
  }
}

ChaosEcPrng make_channel_prng(const KeyMaterial& km, std::size_t channel) {
  if (channel >= km.u0.size()) {
    throw Error(ErrorKind::kParameter, "key has no U0 for channel " + std::to_string(channel));
  }
  return ChaosEcPrng(km.curve, km.generator, km.u0[channel], ChaoticMap(km.chaos_seed, km.chaos_r));
}

KeyBlocks derive_block_keys(const KeyMaterial& km, std::size_t channel, std::size_t num_blocks) {
  if (num_blocks == 0) throw Error(ErrorKind::kParameter, "num_blocks must be positive");
  ChaosEcPrng prng = make_channel_prng(km, channel);
  std::vector<std::uint8_t> bytes(num_blocks * km.block_bytes());
  prng.fill(bytes);
  return KeyBlocks(km.block_bytes(), std::move(bytes));
}

}  // namespace bci
