#include "bpbe/jps.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "bpbe/dihedral.hpp"
#include "bpbe/errors.hpp"
#include "bpbe/keystream.hpp"

namespace bpbe {
namespace {

struct Vec2 {
    int x = 0;
    int y = 0;
};

Vec2 rotate_vec(Vec2 v, int quarter_turns) {
    for (int i = 0; i < (quarter_turns & 3); ++i) v = {-v.y, v.x};
    return v;
}

// Physical step leaving a cell through `side`: top, right, bottom, left.
constexpr Vec2 kSideStep[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};

std::int64_t cell_key(int x, int y) {
    return (static_cast<std::int64_t>(x) << 32) ^ (y & 0xFFFFFFFFLL);
}

// Extract one edge of `piece` rotated by `rot`, as side x 3 samples. Edges run
// left-to-right for top/bottom and top-to-bottom for left/right.
std::vector<int> rotated_edge(const Piece& piece, int rot, int side, int depth) {
    const int b = piece.side;
    std::vector<int> edge(static_cast<std::size_t>(b) * 3);
    for (int t = 0; t < b; ++t) {
        // (x, y) in the rotated tile, `depth` samples in from `side`.
        int x, y;
        switch (side) {
            case kTop: x = t, y = depth; break;
            case kBottom: x = t, y = b - 1 - depth; break;
            case kLeft: x = depth, y = t; break;
            default: x = b - 1 - depth, y = t; break;
        }
        // Map back to the unrotated tile: rotating content cw by r sends
        // source (sx, sy) to (b-1-sy, sx); invert r times.
        int sx = x, sy = y;
        for (int i = 0; i < (rot & 3); ++i) {
            const int tx = sy, ty = b - 1 - sx;
            sx = tx, sy = ty;
        }
        for (int c = 0; c < 3; ++c) {
            edge[static_cast<std::size_t>(t) * 3 + c] =
                piece.rgb[(static_cast<std::size_t>(sy) * b + sx) * 3 + c];
        }
    }
    return edge;
}

}  // namespace

double boundary_dissimilarity(const Piece& a, int side, const Piece& b, int rotation) {
    if (a.side != b.side) throw SizeMismatch("boundary_dissimilarity: piece sizes differ");
    const int n = a.side;
    const auto outer = rotated_edge(a, 0, side, 0);
    const auto inner = n >= 2 ? rotated_edge(a, 0, side, 1) : outer;
    // The edge of b that faces `side` of a is b's opposite side.
    const auto facing = rotated_edge(b, rotation, side ^ 2, 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const int predicted = 2 * outer[i] - inner[i];
        const double diff = predicted - facing[i];
        sum += diff * diff;
    }
    return sum;
}

CompatibilityTable::CompatibilityTable(const std::vector<Piece>& pieces)
    : n_(static_cast<int>(pieces.size())),
      scores_(static_cast<std::size_t>(n_) * n_ * 16,
              std::numeric_limits<double>::infinity()) {
    if (n_ == 0) return;
    const int b = pieces.front().side;
    const std::size_t edge_len = static_cast<std::size_t>(b) * 3;

    // predicted[i][side]: linear extension of piece i one sample past `side`.
    // facing[j][rot*4+side]: edge of piece j rotated by rot, on `side`.
    std::vector<std::array<std::vector<int>, 4>> predicted(n_);
    std::vector<std::array<std::vector<int>, 16>> facing(n_);
    for (int p = 0; p < n_; ++p) {
        for (int side = 0; side < 4; ++side) {
            const auto outer = rotated_edge(pieces[p], 0, side, 0);
            const auto inner = b >= 2 ? rotated_edge(pieces[p], 0, side, 1) : outer;
            auto& pred = predicted[p][side];
            pred.resize(edge_len);
            for (std::size_t k = 0; k < edge_len; ++k) pred[k] = 2 * outer[k] - inner[k];
            for (int rot = 0; rot < 4; ++rot) {
                facing[p][rot * 4 + side] = rotated_edge(pieces[p], rot, side, 0);
            }
        }
    }

    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            for (int side = 0; side < 4; ++side) {
                const auto& pred = predicted[i][side];
                for (int rot = 0; rot < 4; ++rot) {
                    const auto& face = facing[j][rot * 4 + (side ^ 2)];
                    double sum = 0.0;
                    for (std::size_t k = 0; k < edge_len; ++k) {
                        const double diff = pred[k] - face[k];
                        sum += diff * diff;
                    }
                    scores_[((static_cast<std::size_t>(i) * n_ + j) * 4 + side) * 4 + rot] = sum;
                }
            }
        }
    }
}

namespace {

struct Candidate {
    double score;
    int i, j, side, rot;

    bool operator<(const Candidate& o) const {
        if (score != o.score) return score < o.score;
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        if (side != o.side) return side < o.side;
        return rot < o.rot;
    }
};

struct Placement {
    Vec2 pos;
    int orient = 0;  // cw quarter turns
    int comp = 0;
};

class Lattice {
public:
    explicit Lattice(int n) : placed_(n), members_(n), cells_(n) {
        for (int i = 0; i < n; ++i) {
            placed_[i] = {{0, 0}, 0, i};
            members_[i] = {i};
            cells_[i].insert(cell_key(0, 0));
        }
        components_ = n;
    }

    int component(int piece) const { return placed_[piece].comp; }
    int component_count() const { return components_; }
    const Placement& at(int piece) const { return placed_[piece]; }
    const std::vector<int>& members(int comp) const { return members_[comp]; }

    /// Try to attach j's component so that j sits adjacent to `side` of i with
    /// relative rotation `rot` (both expressed with i unrotated). Returns
    /// false when any two pieces would share a lattice cell.
    bool merge(int i, int side, int j, int rot) {
        const Placement& pi = placed_[i];
        const Placement& pj = placed_[j];
        const int target_orient = (pi.orient + rot) & 3;
        const Vec2 step = kSideStep[(side + pi.orient) & 3];
        const Vec2 target_pos = {pi.pos.x + step.x, pi.pos.y + step.y};

        const int spin = (target_orient - pj.orient) & 3;
        const Vec2 spun = rotate_vec(pj.pos, spin);
        const Vec2 shift = {target_pos.x - spun.x, target_pos.y - spun.y};

        const int ci = pi.comp, cj = pj.comp;
        for (const int piece : members_[cj]) {
            const Vec2 p = rotate_vec(placed_[piece].pos, spin);
            if (cells_[ci].contains(cell_key(p.x + shift.x, p.y + shift.y))) return false;
        }
        for (const int piece : members_[cj]) {
            Placement& pl = placed_[piece];
            const Vec2 p = rotate_vec(pl.pos, spin);
            pl.pos = {p.x + shift.x, p.y + shift.y};
            pl.orient = (pl.orient + spin) & 3;
            pl.comp = ci;
            cells_[ci].insert(cell_key(pl.pos.x, pl.pos.y));
            members_[ci].push_back(piece);
        }
        members_[cj].clear();
        cells_[cj].clear();
        --components_;
        return true;
    }

    /// Deterministic fallback: stack remaining components side by side.
    void concatenate_components() {
        std::vector<int> comps;
        for (int i = 0; i < static_cast<int>(placed_.size()); ++i) {
            if (!members_[i].empty()) comps.push_back(i);
        }
        if (comps.size() <= 1) return;
        const int base = comps[0];
        int right_edge = 0;
        for (const int piece : members_[base]) right_edge = std::max(right_edge, placed_[piece].pos.x);
        for (std::size_t k = 1; k < comps.size(); ++k) {
            const int comp = comps[k];
            int min_x = std::numeric_limits<int>::max();
            for (const int piece : members_[comp]) min_x = std::min(min_x, placed_[piece].pos.x);
            const int shift_x = right_edge + 1 - min_x;
            for (const int piece : members_[comp]) {
                Placement& pl = placed_[piece];
                pl.pos.x += shift_x;
                pl.comp = base;
                cells_[base].insert(cell_key(pl.pos.x, pl.pos.y));
                members_[base].push_back(piece);
                right_edge = std::max(right_edge, pl.pos.x);
            }
            members_[comp].clear();
            cells_[comp].clear();
            --components_;
        }
    }

private:
    std::vector<Placement> placed_;
    std::vector<std::vector<int>> members_;
    std::vector<std::unordered_set<std::int64_t>> cells_;
    int components_;
};

}  // namespace

std::vector<Piece> cut_pieces(const RgbImage& image, int side) {
    if (side < 1 || image.width % side != 0 || image.height % side != 0) {
        throw DimensionMismatch("cut_pieces: image not divisible into square pieces");
    }
    const int cols = image.width / side, rows = image.height / side;
    std::vector<Piece> pieces;
    pieces.reserve(static_cast<std::size_t>(cols) * rows);
    for (int by = 0; by < rows; ++by) {
        for (int bx = 0; bx < cols; ++bx) {
            Piece p;
            p.index = by * cols + bx;
            p.side = side;
            p.rgb.resize(static_cast<std::size_t>(side) * side * 3);
            for (int y = 0; y < side; ++y) {
                for (int x = 0; x < side; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        p.rgb[(static_cast<std::size_t>(y) * side + x) * 3 + c] =
                            image.at(bx * side + x, by * side + y, c);
                    }
                }
            }
            pieces.push_back(std::move(p));
        }
    }
    return pieces;
}

AssemblyResult solve(const std::vector<Piece>& pieces, int cols, int rows) {
    const int n = static_cast<int>(pieces.size());
    if (n != cols * rows) throw CountMismatch("solve: piece count does not match the grid");
    AssemblyResult result;
    result.cols = cols;
    result.rows = rows;
    result.placement.assign(static_cast<std::size_t>(n), -1);
    result.orientation.assign(static_cast<std::size_t>(n), 0);
    if (n == 1) {
        result.placement[0] = 0;
        return result;
    }

    const CompatibilityTable table(pieces);
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) * 16);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int side = 0; side < 4; ++side) {
                for (int rot = 0; rot < 4; ++rot) {
                    candidates.push_back({table.score(i, side, j, rot), i, j, side, rot});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());

    Lattice lattice(n);
    for (const Candidate& c : candidates) {
        if (lattice.component_count() == 1) break;
        if (lattice.component(c.i) == lattice.component(c.j)) continue;
        lattice.merge(c.i, c.side, c.j, c.rot);
    }
    lattice.concatenate_components();

    // Crop/shift: the cols x rows window keeping the most pieces, ties going
    // to the smallest (y, x) origin.
    int min_x = std::numeric_limits<int>::max(), min_y = min_x;
    int max_x = std::numeric_limits<int>::min(), max_y = max_x;
    for (int p = 0; p < n; ++p) {
        const auto& pl = lattice.at(p);
        min_x = std::min(min_x, pl.pos.x);
        min_y = std::min(min_y, pl.pos.y);
        max_x = std::max(max_x, pl.pos.x);
        max_y = std::max(max_y, pl.pos.y);
    }
    const int gw = max_x - min_x + 1, gh = max_y - min_y + 1;
    std::vector<int> occupancy(static_cast<std::size_t>(gw) * gh, 0);
    for (int p = 0; p < n; ++p) {
        const auto& pl = lattice.at(p);
        occupancy[static_cast<std::size_t>(pl.pos.y - min_y) * gw + (pl.pos.x - min_x)] = 1;
    }
    // Prefix sums for O(1) window counts.
    std::vector<int> prefix(static_cast<std::size_t>(gw + 1) * (gh + 1), 0);
    for (int y = 0; y < gh; ++y) {
        for (int x = 0; x < gw; ++x) {
            prefix[static_cast<std::size_t>(y + 1) * (gw + 1) + (x + 1)] =
                occupancy[static_cast<std::size_t>(y) * gw + x] +
                prefix[static_cast<std::size_t>(y) * (gw + 1) + (x + 1)] +
                prefix[static_cast<std::size_t>(y + 1) * (gw + 1) + x] -
                prefix[static_cast<std::size_t>(y) * (gw + 1) + x];
        }
    }
    const auto count_window = [&](int x0, int y0) {
        const int x1 = std::clamp(x0, 0, gw), y1 = std::clamp(y0, 0, gh);
        const int x2 = std::clamp(x0 + cols, 0, gw), y2 = std::clamp(y0 + rows, 0, gh);
        return prefix[static_cast<std::size_t>(y2) * (gw + 1) + x2] -
               prefix[static_cast<std::size_t>(y1) * (gw + 1) + x2] -
               prefix[static_cast<std::size_t>(y2) * (gw + 1) + x1] +
               prefix[static_cast<std::size_t>(y1) * (gw + 1) + x1];
    };
    int best_count = -1, best_x = 0, best_y = 0;
    for (int y0 = -(rows - 1); y0 <= gh - 1; ++y0) {
        for (int x0 = -(cols - 1); x0 <= gw - 1; ++x0) {
            const int count = count_window(x0, y0);
            if (count > best_count) {
                best_count = count;
                best_x = x0;
                best_y = y0;
            }
        }
    }

    std::vector<int> evicted;
    for (int p = 0; p < n; ++p) {
        const auto& pl = lattice.at(p);
        const int wx = pl.pos.x - min_x - best_x;
        const int wy = pl.pos.y - min_y - best_y;
        if (wx >= 0 && wx < cols && wy >= 0 && wy < rows) {
            result.placement[static_cast<std::size_t>(wy) * cols + wx] = p;
            result.orientation[static_cast<std::size_t>(wy) * cols + wx] = pl.orient;
        } else {
            evicted.push_back(p);
        }
    }
    std::size_t next = 0;
    for (int cell = 0; cell < n && next < evicted.size(); ++cell) {
        if (result.placement[cell] < 0) {
            result.placement[cell] = evicted[next];
            result.orientation[cell] = lattice.at(evicted[next]).orient;
            ++next;
        }
    }
    return result;
}

RgbImage render_assembly(const AssemblyResult& assembly, const std::vector<Piece>& pieces) {
    if (pieces.empty()) throw CountMismatch("render_assembly: no pieces");
    const int side = pieces.front().side;
    RgbImage out(assembly.cols * side, assembly.rows * side);
    for (int cell = 0; cell < assembly.cell_count(); ++cell) {
        const int p = assembly.placement[cell];
        if (p < 0) continue;
        const int rot = dihedral::rotation_of(assembly.orientation[cell]);
        const int cx = (cell % assembly.cols) * side;
        const int cy = (cell / assembly.cols) * side;
        const Piece& piece = pieces[p];
        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                // source sample of the rotated tile at (x, y)
                int sx = x, sy = y;
                for (int i = 0; i < rot; ++i) {
                    const int tx = sy, ty = side - 1 - sx;
                    sx = tx, sy = ty;
                }
                for (int c = 0; c < 3; ++c) {
                    out.at(cx + x, cy + y, c) =
                        piece.rgb[(static_cast<std::size_t>(sy) * side + sx) * 3 + c];
                }
            }
        }
    }
    return out;
}

std::string AttackReport::csv() const {
    std::ostringstream out;
    out << "trial,Dc,Nc,Lc\n";
    char buf[64];
    for (std::size_t t = 0; t < trials.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%zu,%.4f,%.4f,%.4f", t, trials[t].dc, trials[t].nc,
                      trials[t].lc);
        out << buf << "\n";
    }
    const AttackTrial& b = best();
    std::snprintf(buf, sizeof(buf), "best,%.4f,%.4f,%.4f", b.dc, b.nc, b.lc);
    out << buf << "\n";
    return out.str();
}

AttackReport evaluate_attack(const RgbImage& original, const BlockSpec& spec, Mode mode,
                             unsigned enabled_steps, int trials, std::uint64_t seed) {
    if (trials < 1) throw CountMismatch("evaluate_attack: trials must be at least 1");
    if (!spec.square()) throw NonSquareBlock("evaluate_attack: square blocks required");

    Stream key_source(seed);
    AttackReport report;
    double best_score = -1.0;
    std::vector<Piece> best_pieces;

    for (int t = 0; t < trials; ++t) {
        CipherConfig config;
        config.spec = spec;
        config.keys = derive_bundle(mode, key_source.next());
        config.enabled_steps = enabled_steps;

        const EncryptOutput enc = encrypt_with_record(original, config, /*allow_crop=*/true);
        auto pieces = cut_pieces(enc.image, spec.bx);
        const int cols = enc.image.width / spec.bx;
        const int rows = enc.image.height / spec.by;
        const AssemblyResult solved = solve(pieces, cols, rows);

        // Map the solver's ciphertext-frame assembly into the original frame
        // using the R-channel record: ciphertext piece q holds original block
        // perm[q], transformed by its rotate/flip dihedral.
        AssemblyResult mapped = solved;
        const bool scrambled = (enabled_steps & kStepPositional) != 0;
        const bool rotated = (enabled_steps & kStepRotateFlip) != 0;
        for (int cell = 0; cell < solved.cell_count(); ++cell) {
            const int q = solved.placement[cell];
            if (q < 0) continue;
            mapped.placement[cell] =
                scrambled ? static_cast<int>(enc.record.position_perm[0][q]) : q;
            int net = solved.orientation[cell];
            if (rotated) {
                const int enc_d =
                    dihedral::from_rot_flip(enc.record.rotation[0][q], enc.record.flip[0][q]);
                net = dihedral::compose(solved.orientation[cell], enc_d);
            }
            mapped.orientation[cell] = net;
        }

        const AssemblyResult truth = identity_assembly(cols, rows);
        AttackTrial trial;
        trial.dc = direct_comparison(mapped, truth);
        trial.nc = neighbor_comparison(mapped, truth);
        trial.lc = largest_component(mapped, truth);
        report.trials.push_back(trial);

        const double score = trial.dc + trial.nc + trial.lc;
        if (score > best_score) {
            best_score = score;
            report.best_index = t;
            report.best_assembly = solved;
            best_pieces = std::move(pieces);
        }
    }
    report.best_image = render_assembly(report.best_assembly, best_pieces);
    return report;
}

}  // namespace bpbe
