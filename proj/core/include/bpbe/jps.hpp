#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpbe/cipher.hpp"
#include "bpbe/image.hpp"
#include "bpbe/metrics.hpp"

namespace bpbe {

/// One square puzzle piece: interleaved RGB samples, side x side x 3.
struct Piece {
    int index = 0;
    int side = 0;
    std::vector<std::uint8_t> rgb;
};

enum Side : int { kTop = 0, kRight = 1, kBottom = 2, kLeft = 3 };

/// Gradient-aware SSD: linearly extrapolate piece `a` one sample past its
/// `side` boundary from its two outermost rows/columns, and sum squared
/// differences against the facing edge of `b` rotated by `rotation` clockwise
/// quarter turns. Lower is more compatible.
double boundary_dissimilarity(const Piece& a, int side, const Piece& b, int rotation);

/// score(i, side, j, rotation) for all ordered pairs i != j, i unrotated.
class CompatibilityTable {
public:
    CompatibilityTable(const std::vector<Piece>& pieces);

    double score(int i, int side, int j, int rotation) const {
        return scores_[((static_cast<std::size_t>(i) * n_ + j) * 4 + side) * 4 + rotation];
    }
    int piece_count() const { return n_; }

private:
    int n_;
    std::vector<double> scores_;
};

/// Greedy type-2 solver: best-first merging of rigid components on an open
/// lattice (position and rotation searched; flips, negative-positive and
/// color shuffles are not), then a crop/shift of the merged lattice onto the
/// cols x rows frame. Deterministic: ties break on lowest (i, j, side,
/// rotation), and evicted pieces fill remaining cells in index order.
AssemblyResult solve(const std::vector<Piece>& pieces, int cols, int rows);

/// Cut an image whose dimensions are multiples of `side` into pieces,
/// row-major.
std::vector<Piece> cut_pieces(const RgbImage& image, int side);

/// Render an assembly of `pieces` back into an image (solver-frame layout).
RgbImage render_assembly(const AssemblyResult& assembly, const std::vector<Piece>& pieces);

struct AttackTrial {
    double dc = 0.0;
    double nc = 0.0;
    double lc = 0.0;
};

struct AttackReport {
    std::vector<AttackTrial> trials;
    int best_index = 0;  // highest dc+nc+lc, lowest index on ties
    AssemblyResult best_assembly;
    RgbImage best_image;

    const AttackTrial& best() const { return trials[best_index]; }
    std::string csv() const;  // header trial,Dc,Nc,Lc then rows then best row
};

/// Encrypt `trials` times with fresh key bundles drawn from Stream(seed),
/// solve each ciphertext, and score the assemblies against the identity
/// layout (scores are mapped through the R-channel transform record).
AttackReport evaluate_attack(const RgbImage& original, const BlockSpec& spec, Mode mode,
                             unsigned enabled_steps, int trials, std::uint64_t seed);

}  // namespace bpbe
