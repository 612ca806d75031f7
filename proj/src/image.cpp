#include "bci/image.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "bci/error.hpp"

namespace bci {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::size_t channels)
    : ImageBuffer(width, height, channels, std::vector<std::uint8_t>(width * height * channels)) {}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) throw Error(ErrorKind::kParameter, "image dimensions must be positive");
  if (channels != 1 && channels != 3) throw Error(ErrorKind::kParameter, "image must have 1 or 3 channels");
  if (pixels_.size() != width * height * channels) {
    throw Error(ErrorKind::kParameter, "pixel buffer length does not match width*height*channels");
  }
}

std::vector<std::uint8_t> ImageBuffer::channel(std::size_t c) const {
  if (c >= channels_) throw Error(ErrorKind::kParameter, "channel index out of range");
  std::vector<std::uint8_t> out(pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pixels_[i * channels_ + c];
  return out;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> data) : data_(data) {}

  // Skips whitespace and comments, then reads a decimal token.
  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      value = value * 10 + (data_[pos_] - '0');
      if (value > (std::size_t{1} << 32)) corrupt(std::string(what) + " is too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) corrupt(std::string("expected ") + what);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) corrupt("missing whitespace after maxval");
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  [[noreturn]] static void corrupt(const std::string& what) {
    throw Error(ErrorKind::kCorruptFile, "netpbm header: " + what);
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 2;
};

}  // namespace

ImageBuffer parse_pnm(std::span<const std::uint8_t> data) {
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '6')) {
    throw Error(ErrorKind::kUnsupportedFormat, "only binary P5/P6 Netpbm images are supported");
  }
  const std::size_t channels = data[1] == '5' ? 1 : 3;
  HeaderReader header(data);
  const std::size_t width = header.number("width");
  const std::size_t height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (width == 0 || height == 0) throw Error(ErrorKind::kCorruptFile, "netpbm header: zero dimension");
  if (maxval != 255) {
    throw Error(ErrorKind::kUnsupportedDepth, "maxval " + std::to_string(maxval) + " (only 255 supported)");
  }
  header.single_space();

  const std::size_t raster = width * height * channels;
  const std::size_t offset = header.position();
  if (data.size() - offset < raster) {
    throw Error(ErrorKind::kCorruptFile, "raster truncated: expected " + std::to_string(raster) +
                                             " bytes, found " + std::to_string(data.size() - offset));
  }
  const auto first = data.begin() + static_cast<std::ptrdiff_t>(offset);
  return ImageBuffer(width, height, channels,
                     std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(raster)));
}

std::vector<std::uint8_t> encode_pnm(const ImageBuffer& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

ImageBuffer read_image(const std::filesystem::path& path) { return parse_pnm(read_file_bytes(path)); }

void write_image(const ImageBuffer& img, const std::filesystem::path& path) {
  write_file_bytes(encode_pnm(img), path);
}

}  // namespace bci
