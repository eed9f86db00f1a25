#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bpbe/image.hpp"

namespace bpbe {

/// One 8-bit plane, row-major.
struct CodecPlane {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    CodecPlane() = default;
    CodecPlane(int w, int h)
        : width(w), height(h), samples(static_cast<std::size_t>(w) * h, 0) {}

    bool operator==(const CodecPlane&) const = default;
};

/// Median edge detector: max(a,b) / min(a,b) / a+b-c by the edge test.
int med_predict(int a, int b, int c);

/// Lossless predictive coding of one plane: MED prediction with per-context
/// bias correction, 365 sign-folded gradient contexts (thresholds 3/7/21),
/// Golomb coding with k adapted from the context's (A, N), and an adaptive
/// run mode on zero-gradient samples. Bits are packed MSB-first; the unary
/// quotient precedes the k remainder bits.
std::vector<std::uint8_t> encode_plane(const CodecPlane& plane);

/// Exact inverse. Throws CorruptStream on truncated or malformed input.
CodecPlane decode_plane(std::span<const std::uint8_t> stream, int width, int height);

CodecPlane extract_plane(const RgbImage& image, int channel);

/// Compressed bits across the three independently coded planes, per pixel.
double bitrate(const RgbImage& image);

// Container: 16-byte little-endian header (magic "BPLC", width, height,
// plane count), then one length-prefixed stream per plane.
std::vector<std::uint8_t> encode_image(const RgbImage& image);
RgbImage decode_image(std::span<const std::uint8_t> container);

}  // namespace bpbe
