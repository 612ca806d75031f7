#pragma once

// Block partitioning and the zigzag block <-> array transform.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bci/image.hpp"

namespace bci {

// N x N samples, row-major.
using Block = std::vector<std::uint8_t>;

struct BlockGrid {
  std::size_t block_size = 0;
  std::size_t blocks_x = 0;
  std::size_t blocks_y = 0;
  std::size_t orig_width = 0;
  std::size_t orig_height = 0;
  std::size_t channels = 0;
  // Channel-major; within a channel, left-to-right then top-to-bottom.
  std::vector<Block> blocks;

  std::size_t blocks_per_channel() const { return blocks_x * blocks_y; }
  std::size_t padded_width() const { return blocks_x * block_size; }
  std::size_t padded_height() const { return blocks_y * block_size; }

  Block& at(std::size_t channel, std::size_t j) { return blocks[channel * blocks_per_channel() + j]; }
  const Block& at(std::size_t channel, std::size_t j) const {
    return blocks[channel * blocks_per_channel() + j];
  }
};

// Pads right and bottom with zeros to a multiple of n. n must be 8, 16 or 32
// (Error(kParameter) otherwise).
BlockGrid partition(const ImageBuffer& img, std::size_t n);

// Inverse of partition: reassembles and crops to orig_width x orig_height.
// Throws Error(kStructure) if the grid is internally inconsistent.
ImageBuffer assemble(const BlockGrid& grid);
// Reassembles without cropping (padded_width x padded_height).
ImageBuffer assemble_padded(const BlockGrid& grid);

// JPEG-style anti-diagonal traversal of an n x n block as (row, col) pairs,
// starting at (0,0) and moving right first.
std::vector<std::pair<std::size_t, std::size_t>> zigzag_order(std::size_t n);

// Row-major index of each zigzag position: flat[k] = block[zigzag_indices(n)[k]].
std::vector<std::size_t> zigzag_indices(std::size_t n);

std::vector<std::uint8_t> zigzag_flatten(std::span<const std::uint8_t> block, std::size_t n);
// Throws Error(kStructure) unless arr.size() == n * n.
Block zigzag_unflatten(std::span<const std::uint8_t> arr, std::size_t n);

}  // namespace bci
