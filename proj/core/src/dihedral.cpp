#include "bpbe/dihedral.hpp"

#include <array>
#include <cassert>

namespace bpbe::dihedral {
namespace {

// 2x2 integer matrix acting on (x, y) column vectors.
struct Mat {
    int a, b, c, d;  // [[a b], [c d]]
    bool operator==(const Mat&) const = default;
};

constexpr Mat kIdentity{1, 0, 0, 1};
constexpr Mat kRotCw{0, -1, 1, 0};    // (x,y) -> (-y,x), screen coords, y down
constexpr Mat kMirrorH{-1, 0, 0, 1};  // left-right

constexpr Mat mul(const Mat& lhs, const Mat& rhs) {
    return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
            lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

constexpr std::array<Mat, kCount> make_elements() {
    std::array<Mat, kCount> out{};
    Mat r = kIdentity;
    for (int i = 0; i < 4; ++i) {
        out[i] = r;
        out[4 + i] = mul(kMirrorH, r);  // rotate first, then mirror
        r = mul(kRotCw, r);
    }
    return out;
}

constexpr std::array<Mat, kCount> kElements = make_elements();

int index_of(const Mat& m) {
    for (int i = 0; i < kCount; ++i) {
        if (kElements[i] == m) return i;
    }
    assert(false && "not a dihedral matrix");
    return 0;
}

}  // namespace

int compose(int second, int first) {
    return index_of(mul(kElements[second], kElements[first]));
}

int inverse(int d) {
    for (int i = 0; i < kCount; ++i) {
        if (compose(i, d) == 0) return i;
    }
    assert(false);
    return 0;
}

int from_rot_flip(int rot, int flip) {
    // flip 0 = identity, 1 = horizontal mirror, 2 = vertical mirror (= M*R^2),
    // 3 = both (= R^2); applied after the rotation.
    static const std::array<Mat, 4> kFlips = {kIdentity, kMirrorH, mul(kMirrorH, kElements[2]),
                                              kElements[2]};
    return index_of(mul(kFlips[flip & 3], kElements[rot & 3]));
}

std::pair<int, int> apply(int d, int x, int y) {
    const Mat& m = kElements[d];
    return {m.a * x + m.b * y, m.c * x + m.d * y};
}

}  // namespace bpbe::dihedral
