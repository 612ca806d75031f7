#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bci {

// 8-bit grayscale (1 channel) or RGB (3 channels), row-major, interleaved.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  // Zero-filled. Throws Error(kParameter) on zero dimensions or channels not in {1, 3}.
  ImageBuffer(std::size_t width, std::size_t height, std::size_t channels);
  // Takes ownership of pixels, which must hold exactly width * height * channels bytes.
  ImageBuffer(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<std::uint8_t> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t channels() const { return channels_; }
  std::size_t pixel_count() const { return width_ * height_; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return pixels_[(y * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c = 0) {
    return pixels_[(y * width_ + x) * channels_ + c];
  }

  // Samples of one channel, row-major.
  std::vector<std::uint8_t> channel(std::size_t c) const;

  bool same_shape(const ImageBuffer& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary Netpbm: P5 (grayscale) and P6 (RGB), maxval 255. Header tokens may be
// separated by arbitrary whitespace and '#' comments.
//
// Errors: Error(kUnsupportedFormat) for any other magic (including the ASCII
// P2/P3 variants), Error(kUnsupportedDepth) for maxval != 255,
// Error(kCorruptFile) for malformed headers or a short raster, Error(kIo) when
// the file cannot be opened.
ImageBuffer parse_pnm(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_pnm(const ImageBuffer& img);

ImageBuffer read_image(const std::filesystem::path& path);
void write_image(const ImageBuffer& img, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);

}  // namespace bci
