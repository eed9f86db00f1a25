#!/usr/bin/env python3
"""Big-integer reference for the key-space formulas, independent of the C++ code.

Writes tests/fixtures/keyspace_golden.txt with one line per (scheme, L):

    scheme L n_p n_d n_n n_c n_a

Run from the repository root:  python3 tests/oracle/keyspace_ref.py
"""

from math import factorial


def proposed(L):
    n_p = factorial(L) ** 3
    n_d = 512**L
    n_n = 8**L
    n_c = 6**L
    return n_p, n_d, n_n, n_c, n_p * n_d * n_n * n_c


def conventional(L):
    n_p = factorial(L)
    n_d = 8**L
    n_n = 2**L
    n_c = 6**L
    return n_p, n_d, n_n, n_c, n_p * n_d * n_n * n_c


def main():
    lines = []
    for L in range(1, 17):
        lines.append("prop %d %s" % (L, " ".join(str(x) for x in proposed(L))))
    for L in range(1, 17):
        lines.append("conv %d %s" % (L, " ".join(str(x) for x in conventional(L))))
    with open("tests/fixtures/keyspace_golden.txt", "w") as f:
        f.write("\n".join(lines) + "\n")

    assert proposed(1)[4] == 24576
    assert proposed(2)[4] == 4831838208
    assert conventional(1)[4] == 96
    assert conventional(2)[4] == 18432
    for L in (1, 2, 7, 64):
        ratio = proposed(L)[4] // conventional(L)[4]
        assert ratio * conventional(L)[4] == proposed(L)[4]
        assert ratio == factorial(L) ** 2 * 64**L * 4**L
    print("ok")


if __name__ == "__main__":
    main()
