#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpbe/image.hpp"

namespace bpbe {

/// A puzzle-solver output: which original piece sits in each cell of the
/// u x v grid, and with which dihedral orientation. -1 marks an empty cell.
struct AssemblyResult {
    int cols = 0;
    int rows = 0;
    std::vector<int> placement;    // cols*rows entries, piece index or -1
    std::vector<int> orientation;  // cols*rows entries, dihedral index 0..7

    int cell_count() const { return cols * rows; }
};

AssemblyResult identity_assembly(int cols, int rows);

/// Fraction of pieces in their original cell with identity orientation.
double direct_comparison(const AssemblyResult& result, const AssemblyResult& truth);

/// Fraction of the 2uv-u-v cell adjacencies holding two pieces that are
/// adjacent in the original on the matching side, with equal orientations
/// consistent with that side (rigid-body rule: a globally rotated but
/// internally correct assembly scores 1).
double neighbor_comparison(const AssemblyResult& result, const AssemblyResult& truth);

/// Largest 4-connected region whose internal adjacencies are all correct,
/// as a fraction of the piece count.
double largest_component(const AssemblyResult& result, const AssemblyResult& truth);

/// Shannon entropy over the 2^24 possible colors, each pixel contributing its
/// full (R,G,B) tuple as one symbol. Bits; bounded by log2(pixel count).
double entropy24(const RgbImage& image);

/// Hue x saturation occupancy counts (hexcone HSV), bins x bins.
/// counts[hue_bin * bins + sat_bin].
std::vector<std::uint64_t> hue_sat_histogram(const RgbImage& image, int bins);

/// CSV with header "hue_bin,sat_bin,count", one row per bin.
std::string histogram_csv(const std::vector<std::uint64_t>& counts, int bins);

}  // namespace bpbe
