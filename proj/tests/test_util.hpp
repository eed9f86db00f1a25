#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bpbe/image.hpp"
#include "bpbe/keystream.hpp"

namespace testutil {

// Fixture directory: overridable so the binaries run from any cwd.
inline std::string fixture_path(const std::string& name) {
    if (const char* dir = std::getenv("BPBE_FIXTURE_DIR")) {
        return std::string(dir) + "/" + name;
    }
    return std::string(BPBE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(static_cast<bool>(in), ("cannot open fixture " + path).c_str());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline bpbe::RgbImage random_image(int w, int h, std::uint64_t seed) {
    bpbe::RgbImage img(w, h);
    bpbe::Stream s(seed);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(s.next_bounded(256));
    return img;
}

// Smooth synthetic "photo": overlapping low-frequency waves, distinct
// gradients everywhere, so puzzle adjacencies are unambiguous.
inline bpbe::RgbImage smooth_image(int w, int h) {
    bpbe::RgbImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double fx = static_cast<double>(x) / w;
            const double fy = static_cast<double>(y) / h;
            img.at(x, y, 0) = static_cast<std::uint8_t>(127.5 + 80 * std::sin(3.1 * fx + 1.7 * fy) +
                                                        40 * fy * fx * 2);
            img.at(x, y, 1) =
                static_cast<std::uint8_t>(127.5 + 90 * std::cos(2.3 * fy) * std::sin(1.3 * fx));
            img.at(x, y, 2) = static_cast<std::uint8_t>(100 + 100 * fx * fy + 50 * std::sin(4.1 * fx));
        }
    }
    return img;
}

}  // namespace testutil
