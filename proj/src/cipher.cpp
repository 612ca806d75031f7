#include "bci/cipher.hpp"

#include <algorithm>
#include <future>
#include <string>

#include <json.hpp>

#include "bci/error.hpp"

namespace bci {
namespace {

constexpr std::uint8_t kMagic[4] = {'B', 'C', 'I', '1'};

enum class Mode { kEncrypt, kDecrypt };

void require_key_for(const KeyMaterial& km, int scheme, std::size_t channels) {
  if (km.scheme != scheme) {
    throw Error(ErrorKind::kKey, "key is for scheme " + std::to_string(km.scheme) + ", not scheme " +
                                     std::to_string(scheme));
  }
  if (km.channels() != channels) {
    throw Error(ErrorKind::kKey, "key has " + std::to_string(km.channels()) + " U0 point(s) but image has " +
                                     std::to_string(channels) + " channel(s)");
  }
  if (scheme == 2 && km.iv.size() != km.block_bytes()) {
    throw Error(ErrorKind::kKey, "scheme 2 needs an IV of block_size^2 bytes");
  }
}

// Runs one channel of either scheme in place on the grid.
void transform_channel(BlockGrid& grid, std::size_t channel, const KeyMaterial& km, Mode dir) {
  const std::size_t n = grid.block_size;
  const std::size_t len = n * n;
  const KeyBlocks keys = derive_block_keys(km, channel, grid.blocks_per_channel());
  const std::vector<std::size_t> zz = zigzag_indices(n);
  const bool chained = km.scheme == 2;

  std::vector<std::uint8_t> prev = chained ? km.iv : std::vector<std::uint8_t>(len, 0);
  std::vector<std::uint8_t> in(len);
  std::vector<std::uint8_t> out(len);
  for (std::size_t j = 0; j < grid.blocks_per_channel(); ++j) {
    Block& block = grid.at(channel, j);
    const std::span<const std::uint8_t> key = keys.block(j);
    for (std::size_t k = 0; k < len; ++k) in[k] = block[zz[k]];
    for (std::size_t k = 0; k < len; ++k) out[k] = in[k] ^ key[k] ^ prev[k];
    if (chained) prev = dir == Mode::kEncrypt ? out : in;
    for (std::size_t k = 0; k < len; ++k) block[zz[k]] = out[k];
  }
}

void transform_all(BlockGrid& grid, const KeyMaterial& km, Mode dir) {
  if (grid.channels == 1) {
    transform_channel(grid, 0, km, dir);
    return;
  }
  // Channels write disjoint blocks of the grid.
  std::vector<std::future<void>> jobs;
  for (std::size_t c = 0; c < grid.channels; ++c) {
    jobs.push_back(std::async(std::launch::async, [&grid, &km, dir, c] { transform_channel(grid, c, km, dir); }));
  }
  for (auto& job : jobs) job.get();
}

CipherEnvelope encrypt_with(const ImageBuffer& img, const KeyMaterial& km, int scheme) {
  require_key_for(km, scheme, img.channels());
  BlockGrid grid = partition(img, km.block_size);
  transform_all(grid, km, Mode::kEncrypt);
  ImageBuffer padded = assemble_padded(grid);

  CipherEnvelope env;
  env.scheme = scheme;
  env.block_size = km.block_size;
  env.orig_width = img.width();
  env.orig_height = img.height();
  env.channels = img.channels();
  const auto px = padded.pixels();
  env.payload.assign(px.begin(), px.end());
  return env;
}

ImageBuffer decrypt_with(const CipherEnvelope& env, const KeyMaterial& km, int scheme) {
  env.validate();
  if (env.scheme != scheme || km.scheme != scheme) {
    throw Error(ErrorKind::kEnvelope, "envelope scheme " + std::to_string(env.scheme) +
                                          " does not match key scheme " + std::to_string(km.scheme));
  }
  if (env.block_size != km.block_size) {
    throw Error(ErrorKind::kEnvelope, "envelope block size " + std::to_string(env.block_size) +
                                          " does not match key block size " + std::to_string(km.block_size));
  }
  if (env.channels != km.channels()) {
    throw Error(ErrorKind::kEnvelope, "envelope has " + std::to_string(env.channels) +
                                          " channel(s), key has " + std::to_string(km.channels()));
  }
  if (scheme == 2 && km.iv.size() != km.block_bytes()) {
    throw Error(ErrorKind::kKey, "scheme 2 needs an IV of block_size^2 bytes");
  }
  BlockGrid grid = partition(cipher_view(env), env.block_size);
  grid.orig_width = env.orig_width;
  grid.orig_height = env.orig_height;
  transform_all(grid, km, Mode::kDecrypt);
  return assemble(grid);
}

std::size_t round_up(std::size_t v, std::size_t n) { return (v + n - 1) / n * n; }

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorKind::kCorruptFile, "envelope: " + what); }

}  // namespace

std::size_t CipherEnvelope::padded_width() const { return round_up(orig_width, block_size); }
std::size_t CipherEnvelope::padded_height() const { return round_up(orig_height, block_size); }

void CipherEnvelope::validate() const {
  if (format_version != kEnvelopeFormatVersion) corrupt("unsupported format_version");
  if (scheme != 1 && scheme != 2) corrupt("scheme must be 1 or 2");
  if (!is_valid_block_size(static_cast<unsigned>(block_size))) corrupt("N must be 8, 16 or 32");
  if (channels != 1 && channels != 3) corrupt("channels must be 1 or 3");
  if (orig_width == 0 || orig_height == 0) corrupt("zero image dimension");
  if (payload.size() != padded_width() * padded_height() * channels) {
    corrupt("payload is " + std::to_string(payload.size()) + " bytes, expected " +
            std::to_string(padded_width() * padded_height() * channels));
  }
}

CipherEnvelope encrypt_scheme1(const ImageBuffer& img, const KeyMaterial& km) { return encrypt_with(img, km, 1); }
CipherEnvelope encrypt_scheme2(const ImageBuffer& img, const KeyMaterial& km) { return encrypt_with(img, km, 2); }

CipherEnvelope encrypt(const ImageBuffer& img, const KeyMaterial& km) {
  return km.scheme == 2 ? encrypt_scheme2(img, km) : encrypt_scheme1(img, km);
}

ImageBuffer decrypt_scheme1(const CipherEnvelope& env, const KeyMaterial& km) { return decrypt_with(env, km, 1); }
ImageBuffer decrypt_scheme2(const CipherEnvelope& env, const KeyMaterial& km) { return decrypt_with(env, km, 2); }

ImageBuffer decrypt(const CipherEnvelope& env, const KeyMaterial& km) {
  return env.scheme == 2 ? decrypt_scheme2(env, km) : decrypt_scheme1(env, km);
}

ImageBuffer cipher_view(const CipherEnvelope& env) {
  env.validate();
  return ImageBuffer(env.padded_width(), env.padded_height(), env.channels, env.payload);
}

bool has_envelope_magic(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 4 && std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin());
}

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env) {
  env.validate();
  const nlohmann::json header = {{"scheme", env.scheme},
                                 {"N", env.block_size},
                                 {"orig_width", env.orig_width},
                                 {"orig_height", env.orig_height},
                                 {"channels", env.channels},
                                 {"format_version", env.format_version}};
  const std::string text = header.dump();
  const auto len = static_cast<std::uint32_t>(text.size());

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
  out.insert(out.end(), text.begin(), text.end());
  out.insert(out.end(), env.payload.begin(), env.payload.end());
  return out;
}

CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes) {
  if (!has_envelope_magic(bytes)) corrupt("missing BCI1 magic");
  if (bytes.size() < 8) corrupt("truncated header length");
  std::uint32_t len = 0;
  for (std::size_t i = 4; i < 8; ++i) len = (len << 8) | bytes[i];
  if (bytes.size() - 8 < len) corrupt("truncated header");

  const auto text = bytes.subspan(8, len);
  const nlohmann::json header = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (header.is_discarded() || !header.is_object()) corrupt("header is not a JSON object");

  CipherEnvelope env;
  const auto field = [&](const char* name) -> std::int64_t {
    if (!header.contains(name) || !header.at(name).is_number_integer()) {
      corrupt(std::string("header field '") + name + "' missing or not an integer");
    }
    const auto v = header.at(name).get<std::int64_t>();
    if (v < 0 || v > (std::int64_t{1} << 31)) corrupt(std::string("header field '") + name + "' out of range");
    return v;
  };
  env.scheme = static_cast<int>(field("scheme"));
  env.block_size = static_cast<std::size_t>(field("N"));
  env.orig_width = static_cast<std::size_t>(field("orig_width"));
  env.orig_height = static_cast<std::size_t>(field("orig_height"));
  env.channels = static_cast<std::size_t>(field("channels"));
  env.format_version = static_cast<unsigned>(field("format_version"));
  if (env.block_size == 0) corrupt("N must be positive");

  const auto payload = bytes.subspan(8 + len);
  env.payload.assign(payload.begin(), payload.end());
  env.validate();
  return env;
}

void write_envelope(const CipherEnvelope& env, const std::filesystem::path& path) {
  write_file_bytes(serialize_envelope(env), path);
}

CipherEnvelope read_envelope(const std::filesystem::path& path) { return parse_envelope(read_file_bytes(path)); }

}  // namespace bci
