#pragma once

#include <cstdint>
#include <vector>

namespace bpbe {

/// 8-bit RGB raster, row-major, channels interleaved (R, G, B per pixel).
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size == width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    bool operator==(const RgbImage&) const = default;
};

}  // namespace bpbe
