#pragma once

// Chaos-driven elliptic-curve PRNG.
//
// The point sequence is U_i = [i(1 + b_i)]G + U_0 for i = 1, 2, ..., where b_i
// is 0 when the i-th logistic-map iterate lies in [0, 0.5] and 1 when it lies
// in (0.5, 1]. Key bytes are taken from the x-coordinates of the affine U_i.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bci/binary_ec.hpp"

namespace bci {

// Logistic map s <- r * s * (1 - s), evaluated as (r * s) * (1 - s) in IEEE
// double with no contraction, so streams are bit-identical across platforms.
class ChaoticMap {
 public:
  // Throws Error(kKey) for seeds outside (1e-14, 1 - 1e-14), the degenerate
  // seeds {0.25, 0.5, 0.75}, or r outside (0, 4].
  ChaoticMap(double seed, double r = 4.0);

  // Unvalidated construction, for exercising documented edge behavior.
  static ChaoticMap unchecked(double state, double r);

  // Advances one iteration and returns the threshold bit of the new state.
  bool step();

  double state() const { return state_; }
  double r() const { return r_; }
  std::uint64_t step_index() const { return steps_; }

 private:
  ChaoticMap() = default;

  double state_ = 0.0;
  double r_ = 4.0;
  std::uint64_t steps_ = 0;
};

void validate_chaos_seed(double seed, double r);

// Sequential generator; not safe for concurrent mutation.
class ChaosEcPrng {
 public:
  // Throws Error(kKey) if g or u0 is not on the curve.
  ChaosEcPrng(EllipticCurve curve, CurvePoint g, CurvePoint u0, ChaoticMap chaos);

  // Returns U_i and advances i.
  CurvePoint next_point();

  // n >= 1; throws Error(kParameter) for n == 0.
  std::vector<std::uint8_t> next_bytes(std::size_t n);
  void fill(std::span<std::uint8_t> out);

  // Index of the next point to be generated (starts at 1).
  std::uint64_t index() const { return index_; }
  const ChaoticMap& chaos() const { return chaos_; }

  // Key bytes contributed by each affine point: the max(1, floor(m/8))
  // low-order bytes of x, big-endian.
  std::size_t bytes_per_point() const { return bytes_per_point_; }

  // Test hook: replaces the chaotic bit with a fixed value (the map is not
  // advanced while forced).
  void force_bit(std::optional<bool> bit) { forced_bit_ = bit; }

 private:
  void append_point_bytes(const CurvePoint& p);

  EllipticCurve curve_;
  CurvePoint g_;
  CurvePoint u0_;
  ChaoticMap chaos_;
  std::uint64_t index_ = 1;
  CurvePoint multiple_;  // [index_ - 1]G
  std::vector<std::uint8_t> pool_;  // pending bytes start at pool_head_
  std::size_t pool_head_ = 0;
  std::size_t bytes_per_point_ = 0;
  std::optional<bool> forced_bit_;
};

std::size_t key_bytes_per_point(unsigned m);

inline constexpr unsigned kBlockSizes[] = {8, 16, 32};
bool is_valid_block_size(unsigned n);

struct KeyMaterial {
  std::string curve_name;  // empty for custom curves
  EllipticCurve curve;
  CurvePoint generator;
  std::vector<CurvePoint> u0;  // one per channel
  double chaos_seed = 0.0;
  double chaos_r = 4.0;
  std::vector<std::uint8_t> iv{};  // block_size^2 bytes, required by scheme 2
  int scheme = 1;
  unsigned block_size = 8;

  std::size_t channels() const { return u0.size(); }
  std::size_t block_bytes() const { return static_cast<std::size_t>(block_size) * block_size; }

  // Throws Error(kKey) describing the first violated invariant.
  void validate() const;
};

// num_blocks consecutive block_size^2-byte key blocks for one channel, stored
// contiguously.
class KeyBlocks {
 public:
  KeyBlocks(std::size_t block_len, std::vector<std::uint8_t> bytes)
      : block_len_(block_len), bytes_(std::move(bytes)) {}

  std::size_t size() const { return bytes_.size() / block_len_; }
  std::size_t block_len() const { return block_len_; }
  std::span<const std::uint8_t> block(std::size_t j) const {
    return std::span(bytes_).subspan(j * block_len_, block_len_);
  }
  std::span<const std::uint8_t> bytes() const { return bytes_; }

 private:
  std::size_t block_len_;
  std::vector<std::uint8_t> bytes_;
};

ChaosEcPrng make_channel_prng(const KeyMaterial& km, std::size_t channel);

// Throws Error(kParameter) for an unknown channel or num_blocks == 0.
KeyBlocks derive_block_keys(const KeyMaterial& km, std::size_t channel, std::size_t num_blocks);

}  // namespace bci
