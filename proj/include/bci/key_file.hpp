#pragma once

// JSON key file:
//
//   {
//     "curve": "sect163k1" | {"m": 4, "poly_hex": "13", "a_hex": "1", "b_hex": "1",
//                             "gx_hex": "...", "gy_hex": "..."},
//     "u0": [{"x_hex": "...", "y_hex": "..."}, ...],   // 1 or 3 entries
//     "chaos_seed": "0.123456789",                     // decimal string
//     "chaos_r": "4.0",                                 // optional, default 4.0
//     "iv_hex": "...",                                  // optional, block_size^2 bytes
//     "scheme": 1 | 2,
//     "block_size": 8 | 16 | 32
//   }
//
// Reduction polynomials of custom curves are only checked for irreducibility
// when m <= 20.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bci/keystream.hpp"

namespace bci {

// Parsing errors are reported as Error(kKey); the result is validated.
KeyMaterial key_from_json(const nlohmann::json& j);
nlohmann::json key_to_json(const KeyMaterial& km);

KeyMaterial load_key_file(const std::filesystem::path& path);
void save_key_file(const KeyMaterial& km, const std::filesystem::path& path);

struct KeygenOptions {
  std::string curve_name{kDefaultCurveName};
  unsigned channels = 1;
  int scheme = 2;
  unsigned block_size = 8;
};

// Fresh key from a 64-bit random source: U0 = [k]G for random k below 2^m,
// a random chaos seed, r = 4 and a random IV.
KeyMaterial generate_key(const KeygenOptions& options,
                         const std::function<std::uint64_t()>& random_word);

template <class Rng>
KeyMaterial generate_key(const KeygenOptions& options, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist;
  return generate_key(options, [&] { return dist(rng); });
}

// Uses std::random_device.
KeyMaterial generate_key(const KeygenOptions& options);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);
// Throws Error(kKey) on malformed input.
double parse_double(std::string_view s);

struct KeySpaceSummary {
  double chaos_bits;      // seed and control parameter at 1e-14 precision
  unsigned scalar_bits;   // U0 chosen as a multiple of G below 2^m
  unsigned iv_bits;       // 0 for scheme 1
};

KeySpaceSummary key_space(const KeyMaterial& km);

}  // namespace bci
