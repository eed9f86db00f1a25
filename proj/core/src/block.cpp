#include "bpbe/block.hpp"

#include <string>

#include "bpbe/errors.hpp"

namespace bpbe {

BlockGrid partition(const RgbImage& image, const BlockSpec& spec, bool allow_crop) {
    if (image.width <= 0 || image.height <= 0) {
        throw DimensionMismatch("partition: empty image");
    }
    if (spec.bx < 1 || spec.by < 1) {
        throw DimensionMismatch("partition: block size must be at least 1x1");
    }
    if (!allow_crop && (image.width % spec.bx != 0 || image.height % spec.by != 0)) {
        throw DimensionMismatch("partition: " + std::to_string(image.width) + "x" +
                                std::to_string(image.height) + " not divisible by " +
                                std::to_string(spec.bx) + "x" + std::to_string(spec.by) +
                                " blocks (pass allow_crop to discard the remainder)");
    }

    BlockGrid grid;
    grid.spec = spec;
    grid.cols = image.width / spec.bx;
    grid.rows = image.height / spec.by;
    if (grid.cols == 0 || grid.rows == 0) {
        throw DimensionMismatch("partition: block larger than image");
    }

    const int L = grid.block_count();
    for (auto& ch : grid.channels) ch.resize(L);
    for (int b = 0; b < L; ++b) {
        const int bx0 = (b % grid.cols) * spec.bx;
        const int by0 = (b / grid.cols) * spec.by;
        for (int c = 0; c < 3; ++c) {
            Tile tile(static_cast<std::size_t>(spec.bx) * spec.by);
            for (int y = 0; y < spec.by; ++y) {
                for (int x = 0; x < spec.bx; ++x) {
                    tile[static_cast<std::size_t>(y) * spec.bx + x] =
                        image.at(bx0 + x, by0 + y, c);
                }
            }
            grid.channels[c][b] = std::move(tile);
        }
    }
    return grid;
}

RgbImage assemble(const BlockGrid& grid) {
    RgbImage out(grid.cols * grid.spec.bx, grid.rows * grid.spec.by);
    const int L = grid.block_count();
    for (int b = 0; b < L; ++b) {
        const int bx0 = (b % grid.cols) * grid.spec.bx;
        const int by0 = (b / grid.cols) * grid.spec.by;
        for (int c = 0; c < 3; ++c) {
            const Tile& tile = grid.channels[c][b];
            for (int y = 0; y < grid.spec.by; ++y) {
                for (int x = 0; x < grid.spec.bx; ++x) {
                    out.at(bx0 + x, by0 + y, c) =
                        tile[static_cast<std::size_t>(y) * grid.spec.bx + x];
                }
            }
        }
    }
    return out;
}

}  // namespace bpbe
