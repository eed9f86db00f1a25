#pragma once

#include <string>

#include "bpbe/image.hpp"

namespace bpbe {

// Binary PPM (P6), maxval 255 only. Reading tolerates comments and arbitrary
// whitespace in the header; writing produces the canonical "P6\n<w> <h>\n255\n"
// form so write(read(f)) of our own files is byte-identical.

RgbImage read_ppm(const std::string& path);
void write_ppm(const RgbImage& image, const std::string& path);  // atomic: temp + rename

std::string ppm_to_string(const RgbImage& image);
RgbImage ppm_from_string(const std::string& bytes);

}  // namespace bpbe
