"""Smith normal form over the integers with unimodular transforms.

Matrices are plain lists of lists of Python ints, so there is no overflow
regardless of how large intermediate entries become.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Integer matrix product; ``cols`` is needed only when ``b`` has no rows."""
    ncols = len(b[0]) if b else (cols or 0)
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(ncols)] for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``D = U @ M @ V``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...`` (zeros last). ``cols`` gives the column
    count for a matrix with no rows.

    >>> smith_normal_form([[2, 4], [6, 10]])[1]
    [[2, 0], [0, 2]]
    """
    rows = len(m)
    ncols = len(m[0]) if rows else (cols or 0)
    d = [list(map(int, row)) for row in m]
    u = identity(rows)
    v = identity(ncols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, c: int) -> None:
        # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, c: int) -> None:
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(rows, ncols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, ncols):
                    if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, ncols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            # pivot row/column are clear; enforce divisibility on the rest
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, ncols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def invariant_factors(m: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    """Diagonal of the Smith form, length ``min(rows, cols)``."""
    _, d, _ = smith_normal_form(m, cols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
