#pragma once

// Block image encryption.
//
// Scheme 1 XORs every zigzag-ordered block with its own key block:
//   C_j = K_j ^ Z_j
// Scheme 2 chains blocks CBC-style, with C_0 = IV:
//   C_j = K_j ^ C_{j-1} ^ Z_j
// Channels are processed independently, each with its own keystream and its
// own chain starting from the IV. There is no integrity protection: a wrong
// key decrypts to noise without an error.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bci/blocks.hpp"
#include "bci/image.hpp"
#include "bci/keystream.hpp"

namespace bci {

inline constexpr unsigned kEnvelopeFormatVersion = 1;

struct CipherEnvelope {
  int scheme = 1;
  std::size_t block_size = 8;
  std::size_t orig_width = 0;
  std::size_t orig_height = 0;
  std::size_t channels = 1;
  unsigned format_version = kEnvelopeFormatVersion;
  // Padded cipher raster, row-major and interleaved like a P5/P6 raster.
  std::vector<std::uint8_t> payload;

  std::size_t padded_width() const;
  std::size_t padded_height() const;

  // Throws Error(kCorruptFile) if the payload length or header fields are inconsistent.
  void validate() const;

  friend bool operator==(const CipherEnvelope&, const CipherEnvelope&) = default;
};

// Errors: Error(kKey) if the key's scheme, channel count or IV does not fit.
CipherEnvelope encrypt_scheme1(const ImageBuffer& img, const KeyMaterial& km);
CipherEnvelope encrypt_scheme2(const ImageBuffer& img, const KeyMaterial& km);
// Dispatches on km.scheme.
CipherEnvelope encrypt(const ImageBuffer& img, const KeyMaterial& km);

// Errors: Error(kEnvelope) when the envelope's scheme, block size or channel
// count disagrees with the key.
ImageBuffer decrypt_scheme1(const CipherEnvelope& env, const KeyMaterial& km);
ImageBuffer decrypt_scheme2(const CipherEnvelope& env, const KeyMaterial& km);
ImageBuffer decrypt(const CipherEnvelope& env, const KeyMaterial& km);

// The padded cipher raster as a viewable image.
ImageBuffer cipher_view(const CipherEnvelope& env);

// "BCI1", 4-byte big-endian header length, compact JSON header
// {"N","channels","format_version","orig_height","orig_width","scheme"}, raw payload.
std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env);
// Errors: Error(kCorruptFile) on bad magic, header or payload length.
CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes);
bool has_envelope_magic(std::span<const std::uint8_t> bytes);

void write_envelope(const CipherEnvelope& env, const std::filesystem::path& path);
CipherEnvelope read_envelope(const std::filesystem::path& path);

}  // namespace bci
