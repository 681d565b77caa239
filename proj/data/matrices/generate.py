#!/usr/bin/env python3
"""Regenerate the small SPD test matrices in this directory.

Every matrix is written as a lower-triangle `coordinate real symmetric`
Matrix Market file. Condition numbers are kept below about 100 so that a
relative gradient tolerance of 1e-6 pins the solution of A x = A e to
roughly 1e-4.
"""

import random
from pathlib import Path

HERE = Path(__file__).resolve().parent


def write(name, n, entries, comment):
    lower = sorted(((i, j), v) for (i, j), v in entries.items() if i >= j and v != 0.0)
    with open(HERE / f"{name}.mtx", "w") as f:
        f.write("%%MatrixMarket matrix coordinate real symmetric\n")
        f.write(f"% {comment}\n")
        f.write(f"{n} {n} {len(lower)}\n")
        for (i, j), v in lower:
            f.write(f"{i + 1} {j + 1} {v!r}\n")


def tridiag(n, diag, off):
    e = {}
    for i in range(n):
        e[(i, i)] = diag
        if i > 0:
            e[(i, i - 1)] = off
    return e


def lap2d(m, shift):
    e = {}
    for r in range(m):
        for c in range(m):
            i = r * m + c
            e[(i, i)] = 4.0 + shift
            if c > 0:
                e[(i, i - 1)] = -1.0
            if r > 0:
                e[(i, i - m)] = -1.0
    return e


def random_dd(n, density, rng):
    e = {}
    rowsum = [0.0] * n
    for i in range(n):
        for j in range(i):
            if rng.random() < density:
                v = rng.uniform(-1.0, 1.0)
                e[(i, j)] = v
                rowsum[i] += abs(v)
                rowsum[j] += abs(v)
    for i in range(n):
        e[(i, i)] = 1.2 * rowsum[i] + 1.0
    return e


def log_diagonal(n, lo, hi):
    return {(i, i): lo * (hi / lo) ** (i / (n - 1)) for i in range(n)}


def pentadiag(n):
    e = {}
    for i in range(n):
        e[(i, i)] = 6.0
        if i > 0:
            e[(i, i - 1)] = -1.5
        if i > 1:
            e[(i, i - 2)] = 0.5
    return e


def main():
    rng = random.Random(20240611)
    write("lap1d_shift_100", 100, tridiag(100, 2.5, -1.0),
          "1D Laplacian plus 0.5 I, eigenvalues in (0.5, 4.5)")
    write("lap2d_shift_12x12", 144, lap2d(12, 0.5),
          "2D 5-point Laplacian plus 0.5 I on a 12x12 grid")
    h = 1.0 / 61
    write("fem_mass_1d_60", 60, tridiag(60, 4.0 * h / 6.0, h / 6.0),
          "1D linear finite element mass matrix, h = 1/61")
    write("random_dd_80", 80, random_dd(80, 0.08, rng),
          "random symmetric, diagonally dominant (seeded)")
    write("logdiag_50", 50, log_diagonal(50, 1.0, 100.0),
          "diagonal, eigenvalues log-spaced in [1, 100]")
    write("pentadiag_120", 120, pentadiag(120),
          "symmetric pentadiagonal (6, -1.5, 0.5)")


if __name__ == "__main__":
    main()
