#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bpbe/image.hpp"

namespace bpbe {

struct BlockSpec {
    int bx = 0;  // block width
    int by = 0;  // block height

    bool square() const { return bx == by; }
};

/// One block of one color channel, bx*by samples, row-major.
using Tile = std::vector<std::uint8_t>;

/// Per-channel block decomposition of an image. Blocks are indexed row-major
/// (left-to-right, top-to-bottom); that order is the canonical one every
/// keystream consumer relies on.
struct BlockGrid {
    BlockSpec spec;
    int cols = 0;
    int rows = 0;
    std::array<std::vector<Tile>, 3> channels;  // channels[c][block]

    int block_count() const { return cols * rows; }
};

/// Split `image` into ⌊width/bx⌋ x ⌊height/by⌋ blocks per channel.
/// Right/bottom remainder pixels are discarded only when `allow_crop` is set;
/// otherwise non-divisible dimensions raise DimensionMismatch.
BlockGrid partition(const RgbImage& image, const BlockSpec& spec, bool allow_crop = false);

/// Exact inverse of partition on divisible inputs.
RgbImage assemble(const BlockGrid& grid);

}  // namespace bpbe
