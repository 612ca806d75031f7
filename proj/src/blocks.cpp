#include "bci/blocks.hpp"

#include <algorithm>
#include <string>

#include "bci/error.hpp"

namespace bci {
namespace {

bool is_partition_size(std::size_t n) { return n == 8 || n == 16 || n == 32; }

void check_grid(const BlockGrid& g) {
  const std::size_t n = g.block_size;
  const auto minimal = [n](std::size_t blocks, std::size_t orig) {
    return orig > 0 && blocks * n >= orig && (blocks - 1) * n < orig;
  };
  if (n == 0 || g.blocks_x == 0 || g.blocks_y == 0) {
    throw Error(ErrorKind::kStructure, "empty block grid");
  }
  if (!minimal(g.blocks_x, g.orig_width) || !minimal(g.blocks_y, g.orig_height)) {
    throw Error(ErrorKind::kStructure, "grid dimensions disagree with the original image size");
  }
  if (g.channels != 1 && g.channels != 3) throw Error(ErrorKind::kStructure, "grid must have 1 or 3 channels");
  if (g.blocks.size() != g.blocks_per_channel() * g.channels) {
    throw Error(ErrorKind::kStructure, "expected " + std::to_string(g.blocks_per_channel() * g.channels) +
                                           " blocks, found " + std::to_string(g.blocks.size()));
  }
  for (const Block& b : g.blocks) {
    if (b.size() != n * n) throw Error(ErrorKind::kStructure, "block has wrong length");
  }
}

}  // namespace

BlockGrid partition(const ImageBuffer& img, std::size_t n) {
  if (!is_partition_size(n)) throw Error(ErrorKind::kParameter, "block size must be 8, 16 or 32");
  BlockGrid g;
  g.block_size = n;
  g.blocks_x = (img.width() + n - 1) / n;
  g.blocks_y = (img.height() + n - 1) / n;
  g.orig_width = img.width();
  g.orig_height = img.height();
  g.channels = img.channels();
  g.blocks.assign(g.blocks_per_channel() * g.channels, Block(n * n, 0));

  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t by = 0; by < g.blocks_y; ++by) {
      for (std::size_t bx = 0; bx < g.blocks_x; ++bx) {
        Block& block = g.at(c, by * g.blocks_x + bx);
        const std::size_t y_end = std::min(n, img.height() - by * n);
        const std::size_t x_end = std::min(n, img.width() - bx * n);
        for (std::size_t r = 0; r < y_end; ++r) {
          for (std::size_t col = 0; col < x_end; ++col) {
            block[r * n + col] = img.at(bx * n + col, by * n + r, c);
          }
        }
      }
    }
  }
  return g;
}

namespace {

ImageBuffer assemble_to(const BlockGrid& g, std::size_t width, std::size_t height) {
  check_grid(g);
  const std::size_t n = g.block_size;
  ImageBuffer img(width, height, g.channels);
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t by = 0; by < g.blocks_y; ++by) {
      for (std::size_t bx = 0; bx < g.blocks_x; ++bx) {
        const Block& block = g.at(c, by * g.blocks_x + bx);
        const std::size_t y_end = std::min(n, height - by * n);
        const std::size_t x_end = std::min(n, width - bx * n);
        for (std::size_t r = 0; r < y_end; ++r) {
          for (std::size_t col = 0; col < x_end; ++col) {
            img.at(bx * n + col, by * n + r, c) = block[r * n + col];
          }
        }
      }
    }
  }
  return img;
}

}  // namespace

ImageBuffer assemble(const BlockGrid& grid) { return assemble_to(grid, grid.orig_width, grid.orig_height); }

ImageBuffer assemble_padded(const BlockGrid& grid) {
  return assemble_to(grid, grid.padded_width(), grid.padded_height());
}

std::vector<std::pair<std::size_t, std::size_t>> zigzag_order(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  order.reserve(n * n);
  if (n == 0) return order;
  for (std::size_t d = 0; d + 1 < 2 * n; ++d) {
    const std::size_t lo = d >= n ? d - n + 1 : 0;
    const std::size_t hi = std::min(d, n - 1);
    if (d % 2 == 1) {
      // Down-left: row increases.
      for (std::size_t r = lo; r <= hi; ++r) order.emplace_back(r, d - r);
    } else {
      // Up-right: row decreases.
      for (std::size_t r = hi + 1; r-- > lo;) order.emplace_back(r, d - r);
    }
  }
  return order;
}

std::vector<std::size_t> zigzag_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  idx.reserve(n * n);
  for (const auto& [r, c] : zigzag_order(n)) idx.push_back(r * n + c);
  return idx;
}

std::vector<std::uint8_t> zigzag_flatten(std::span<const std::uint8_t> block, std::size_t n) {
  if (block.size() != n * n) throw Error(ErrorKind::kStructure, "block is not n x n");
  std::vector<std::uint8_t> out;
  out.reserve(n * n);
  for (std::size_t i : zigzag_indices(n)) out.push_back(block[i]);
  return out;
}

Block zigzag_unflatten(std::span<const std::uint8_t> arr, std::size_t n) {
  if (arr.size() != n * n) {
    throw Error(ErrorKind::kStructure, "zigzag array has length " + std::to_string(arr.size()) +
                                           ", expected " + std::to_string(n * n));
  }
  Block block(n * n);
  const std::vector<std::size_t> idx = zigzag_indices(n);
  for (std::size_t k = 0; k < idx.size(); ++k) block[idx[k]] = arr[k];
  return block;
}

}  // namespace bci
