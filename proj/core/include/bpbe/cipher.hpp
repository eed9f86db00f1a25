#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bpbe/block.hpp"
#include "bpbe/keys.hpp"

namespace bpbe {

enum StepMask : unsigned {
    kStepPositional = 1u << 0,
    kStepRotateFlip = 1u << 1,
    kStepNegPos = 1u << 2,
    kStepColorShuffle = 1u << 3,
    kStepsAll = kStepPositional | kStepRotateFlip | kStepNegPos | kStepColorShuffle,
};

struct CipherConfig {
    BlockSpec spec;
    KeyBundle keys;
    unsigned enabled_steps = kStepsAll;
};

/// Everything the keys determined for one encryption. Permutations use gather
/// semantics: output block at position i is input block position_perm[c][i].
/// Rotation/flip/negpos are indexed by block position in the scrambled layout
/// (the layout they were applied in); color_perm likewise.
struct BlockTransformRecord {
    std::array<std::vector<std::uint32_t>, 3> position_perm;
    std::array<std::vector<std::uint8_t>, 3> rotation;  // quarter turns cw, 0..3
    std::array<std::vector<std::uint8_t>, 3> flip;      // 0 none, 1 horiz, 2 vert, 3 both
    std::array<std::vector<std::uint8_t>, 3> negpos_bit;
    std::vector<std::uint8_t> color_perm;  // index in [0,6), channel-shared
};

// The four transform steps. Each consumes its own per-channel streams seeded
// by the matching subkeys, drawing in row-major block order, and appends what
// it drew to `rec`.
BlockGrid scramble_positions(const BlockGrid& grid, const KeyBundle& keys,
                             BlockTransformRecord& rec);
BlockGrid rotate_flip(const BlockGrid& grid, const KeyBundle& keys, BlockTransformRecord& rec);
BlockGrid negpos_transform(const BlockGrid& grid, const KeyBundle& keys,
                           BlockTransformRecord& rec);
BlockGrid shuffle_colors(const BlockGrid& grid, const KeyBundle& keys, BlockTransformRecord& rec);

// Tile helpers shared with the puzzle-solver side.
Tile rotate_tile_cw(const Tile& tile, int w, int h, int quarter_turns);
Tile flip_tile(const Tile& tile, int w, int h, int flip);

// Color shuffle index -> source channel for each output channel, enumerating
// the permutations of (R,G,B) lexicographically: RGB, RBG, GRB, GBR, BRG, BGR.
std::array<int, 3> color_perm_sources(int index);

struct EncryptOutput {
    RgbImage image;
    BlockTransformRecord record;
};

/// partition -> scramble -> rotate/flip -> negpos -> color shuffle -> assemble,
/// skipping disabled steps. Output dimensions are the (cropped) input ones.
EncryptOutput encrypt_with_record(const RgbImage& image, const CipherConfig& config,
                                  bool allow_crop = false);
RgbImage encrypt(const RgbImage& image, const CipherConfig& config, bool allow_crop = false);

/// Regenerates the transform record from the keys and applies the inverses in
/// reverse order; decrypt(encrypt(I)) == I bit-exactly.
RgbImage decrypt(const RgbImage& image, const CipherConfig& config);

}  // namespace bpbe
