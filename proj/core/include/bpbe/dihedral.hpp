#pragma once

#include <cstdint>
#include <utility>

namespace bpbe::dihedral {

// The 8 symmetries of a square, indexed 0..7 as mirror*4 + rotation, where the
// transform rotates clockwise by `rotation` quarter turns first and then
// mirrors left-right if `mirror` is set. Indices 0..3 are the pure rotations.

inline constexpr int kCount = 8;

constexpr int rotation_of(int d) { return d & 3; }
constexpr bool mirrored(int d) { return (d & 4) != 0; }

/// Index of "apply `first`, then `second`".
int compose(int second, int first);

int inverse(int d);

/// Dihedral index of the cipher's rotate-then-flip step: `rot` clockwise
/// quarter turns followed by flip 0=none, 1=horizontal, 2=vertical, 3=both.
int from_rot_flip(int rot, int flip);

/// Action on displacement vectors in screen coordinates (x right, y down).
std::pair<int, int> apply(int d, int x, int y);

}  // namespace bpbe::dihedral
