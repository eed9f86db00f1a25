#!/usr/bin/env python3
"""Reference implementation of the keystream pipeline, independent of the C++ code.

Regenerates the golden fixtures used by the keystream tests:

    splitmix64_golden.txt    one line per vector: seed_hex N outputs_hex...
    permutation_golden.txt   one line per vector: seed_hex L p0 p1 ... p{L-1}

Run from the repository root:  python3 tests/oracle/keystream_ref.py
"""

import sys

MASK = (1 << 64) - 1


class Stream:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def next_bounded(self, bound):
        # Rejection sampling: accept only below the largest multiple of
        # `bound` representable in 64 bits, so every residue is equiprobable.
        assert bound >= 1
        limit = (2**64 // bound) * bound
        v = self.next()
        while v >= limit:
            v = self.next()
        return v % bound

    def permutation(self, length):
        p = list(range(length))
        for i in range(length - 1, 0, -1):
            j = self.next_bounded(i + 1)
            p[i], p[j] = p[j], p[i]
        return p


def main():
    seeds = [0, 1, 2, 42, 0xDEADBEEF, 0xFFFFFFFFFFFFFFFF, 0x123456789ABCDEF0]
    lines = []
    for seed in seeds:
        s = Stream(seed)
        outs = [s.next() for _ in range(8)]
        lines.append("%016x 8 %s" % (seed, " ".join("%016x" % o for o in outs)))
    with open("tests/fixtures/splitmix64_golden.txt", "w") as f:
        f.write("\n".join(lines) + "\n")

    # Sanity pin: first output for seed 0 is the published SplitMix64 vector.
    first = Stream(0).next()
    assert first == 0xE220A8397B1DCDAF, hex(first)

    perms = [(0, 1), (42, 4), (42, 10), (7, 16), (0xDEADBEEF, 64)]
    lines = []
    for seed, length in perms:
        p = Stream(seed).permutation(length)
        lines.append("%016x %d %s" % (seed, length, " ".join(str(x) for x in p)))
    with open("tests/fixtures/permutation_golden.txt", "w") as f:
        f.write("\n".join(lines) + "\n")

    # Handy constants for hand-written test cases.
    for seed in range(16):
        s = Stream(seed)
        print("seed %2d: perm(2) = %s, first bounded(2) draws = %s"
              % (seed, Stream(seed).permutation(2),
                 [s.next_bounded(2) for _ in range(4)]))
    print("perm(seed=42, L=4) =", Stream(42).permutation(4))
    print("ok")


if __name__ == "__main__":
    sys.exit(main())
