#include "bpbe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "bpbe/dihedral.hpp"
#include "bpbe/errors.hpp"

namespace bpbe {
namespace {

void check_shapes(const AssemblyResult& result, const AssemblyResult& truth) {
    if (result.cols != truth.cols || result.rows != truth.rows) {
        throw ShapeMismatch("assembly grids differ in shape");
    }
    const auto cells = static_cast<std::size_t>(result.cell_count());
    if (result.placement.size() != cells || result.orientation.size() != cells ||
        truth.placement.size() != cells || truth.orientation.size() != cells) {
        throw ShapeMismatch("assembly arrays inconsistent with grid shape");
    }
    std::vector<bool> seen(cells, false);
    for (const int p : result.placement) {
        if (p < 0) continue;
        if (p >= static_cast<int>(cells) || seen[p]) {
            throw ShapeMismatch("assembly places a piece twice or out of range");
        }
        seen[p] = true;
    }
}

// truth cell holding each piece (truth orientations are required identity).
std::vector<int> truth_positions(const AssemblyResult& truth) {
    std::vector<int> pos(truth.cell_count(), -1);
    for (int cell = 0; cell < truth.cell_count(); ++cell) {
        if (truth.orientation[cell] != 0) {
            throw ShapeMismatch("truth assembly must have identity orientations");
        }
        const int p = truth.placement[cell];
        if (p >= 0) pos[p] = cell;
    }
    return pos;
}

// An adjacency (cell, cell+step) is correctly concatenated when both pieces
// carry the same net orientation and their original cells sit in the
// direction the inverse orientation maps the step onto. This makes the rule
// rigid-body invariant: a whole assembly rotated 180 degrees still scores.
bool adjacency_correct(const AssemblyResult& result, const std::vector<int>& tpos, int cell_a,
                       int cell_b, int dx, int dy, int cols) {
    const int p = result.placement[cell_a];
    const int q = result.placement[cell_b];
    if (p < 0 || q < 0) return false;
    const int theta = result.orientation[cell_a];
    if (theta != result.orientation[cell_b]) return false;
    const auto [ox, oy] = dihedral::apply(dihedral::inverse(theta), dx, dy);
    const int pa = tpos[p];
    const int qb = tpos[q];
    if (pa < 0 || qb < 0) return false;
    const int ax = pa % cols, ay = pa / cols;
    const int bx = qb % cols, by = qb / cols;
    return bx == ax + ox && by == ay + oy;
}

}  // namespace

AssemblyResult identity_assembly(int cols, int rows) {
    AssemblyResult a;
    a.cols = cols;
    a.rows = rows;
    a.placement.resize(static_cast<std::size_t>(cols) * rows);
    std::iota(a.placement.begin(), a.placement.end(), 0);
    a.orientation.assign(static_cast<std::size_t>(cols) * rows, 0);
    return a;
}

double direct_comparison(const AssemblyResult& result, const AssemblyResult& truth) {
    check_shapes(result, truth);
    const int n = result.cell_count();
    int correct = 0;
    for (int cell = 0; cell < n; ++cell) {
        if (result.placement[cell] == truth.placement[cell] && result.orientation[cell] == 0) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / n;
}

double neighbor_comparison(const AssemblyResult& result, const AssemblyResult& truth) {
    check_shapes(result, truth);
    const auto tpos = truth_positions(truth);
    const int u = result.cols, v = result.rows;
    const long total = 2L * u * v - u - v;
    long correct = 0;
    for (int y = 0; y < v; ++y) {
        for (int x = 0; x < u; ++x) {
            const int cell = y * u + x;
            if (x + 1 < u && adjacency_correct(result, tpos, cell, cell + 1, 1, 0, u)) ++correct;
            if (y + 1 < v && adjacency_correct(result, tpos, cell, cell + u, 0, 1, u)) ++correct;
        }
    }
    return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

double largest_component(const AssemblyResult& result, const AssemblyResult& truth) {
    check_shapes(result, truth);
    const auto tpos = truth_positions(truth);
    const int u = result.cols, v = result.rows;
    const int cells = u * v;
    int pieces = 0;
    for (const int p : result.placement) pieces += p >= 0 ? 1 : 0;
    if (pieces == 0) return 0.0;

    // Flood fill over the correct-adjacency graph.
    std::vector<int> seen(cells, 0);
    std::vector<int> stack;
    int best = 0;
    for (int start = 0; start < cells; ++start) {
        if (seen[start] || result.placement[start] < 0) continue;
        int size = 0;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const int cell = stack.back();
            stack.pop_back();
            ++size;
            const int x = cell % u, y = cell / u;
            const auto try_edge = [&](int nx, int ny, int dx, int dy) {
                if (nx < 0 || ny < 0 || nx >= u || ny >= v) return;
                const int other = ny * u + nx;
                if (seen[other]) return;
                const int a = dx + dy > 0 ? cell : other;
                const int b = dx + dy > 0 ? other : cell;
                const int sx = std::abs(dx), sy = std::abs(dy);
                if (adjacency_correct(result, tpos, a, b, sx, sy, u)) {
                    seen[other] = 1;
                    stack.push_back(other);
                }
            };
            try_edge(x + 1, y, 1, 0);
            try_edge(x - 1, y, -1, 0);
            try_edge(x, y + 1, 0, 1);
            try_edge(x, y - 1, 0, -1);
        }
        best = std::max(best, size);
    }
    return static_cast<double>(best) / pieces;
}

double entropy24(const RgbImage& image) {
    std::vector<std::uint32_t> keys;
    keys.reserve(image.pixel_count());
    for (std::size_t i = 0; i < image.data.size(); i += 3) {
        keys.push_back((static_cast<std::uint32_t>(image.data[i]) << 16) |
                       (static_cast<std::uint32_t>(image.data[i + 1]) << 8) |
                       image.data[i + 2]);
    }
    std::sort(keys.begin(), keys.end());
    const double total = static_cast<double>(keys.size());
    double h = 0.0;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const double p = static_cast<double>(j - i) / total;
        h -= p * std::log2(p);
        i = j;
    }
    return h;
}

std::vector<std::uint64_t> hue_sat_histogram(const RgbImage& image, int bins) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins) * bins, 0);
    for (std::size_t i = 0; i < image.data.size(); i += 3) {
        const int r = image.data[i], g = image.data[i + 1], b = image.data[i + 2];
        const int vmax = std::max({r, g, b});
        const int vmin = std::min({r, g, b});
        const int delta = vmax - vmin;
        double hue = 0.0;  // degrees in [0, 360)
        double sat = 0.0;
        if (vmax > 0) sat = static_cast<double>(delta) / vmax;
        if (delta > 0) {
            if (vmax == r) {
                hue = 60.0 * (static_cast<double>(g - b) / delta);
            } else if (vmax == g) {
                hue = 60.0 * (2.0 + static_cast<double>(b - r) / delta);
            } else {
                hue = 60.0 * (4.0 + static_cast<double>(r - g) / delta);
            }
            if (hue < 0.0) hue += 360.0;
        }
        const int hb = std::min(bins - 1, static_cast<int>(hue / 360.0 * bins));
        const int sb = std::min(bins - 1, static_cast<int>(sat * bins));
        ++counts[static_cast<std::size_t>(hb) * bins + sb];
    }
    return counts;
}

std::string histogram_csv(const std::vector<std::uint64_t>& counts, int bins) {
    std::ostringstream out;
    out << "hue_bin,sat_bin,count\n";
    for (int h = 0; h < bins; ++h) {
        for (int s = 0; s < bins; ++s) {
            out << h << ',' << s << ',' << counts[static_cast<std::size_t>(h) * bins + s] << '\n';
        }
    }
    return out.str();
}

}  // namespace bpbe
