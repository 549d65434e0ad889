"""Finite cellular chain complexes over Z and their homology.

This module is deliberately independent of the profile catalog and the
bubbling engine: it computes homology from boundary matrices alone and is
used to cross-check the hand-written profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FGAbelianGroup, PresentationMatrix, canonicalize
from .snf import invariant_factors, matmul

Block = tuple[tuple[int, ...], ...]


def _zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


@dataclass(frozen=True)
class ChainComplex:
    """``dims[k]`` cells in degree ``k``; ``boundaries[k-1]`` is the matrix of
    the boundary map from degree ``k`` to ``k-1`` (shape ``dims[k-1] x dims[k]``).
    """

    dims: tuple[int, ...]
    boundaries: tuple[Block, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 0 for d in dims):
            raise ValueError("dims must be a non-empty sequence of non-negative integers")
        blocks = tuple(tuple(tuple(int(x) for x in row) for row in b) for b in self.boundaries)
        if len(blocks) != len(dims) - 1:
            raise ValueError(f"expected {len(dims) - 1} boundary matrices, got {len(blocks)}")
        for k, b in enumerate(blocks, start=1):
            rows, cols = dims[k - 1], dims[k]
            # a matrix with no columns may be written as [] whatever its height
            if cols == 0 and not b:
                b = tuple(() for _ in range(rows))
            if len(b) != rows or any(len(r) != cols for r in b):
                raise ValueError(f"boundary_{k} must be {rows}x{cols}")
            blocks = blocks[: k - 1] + (b,) + blocks[k:]
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", blocks)
        for k in range(1, len(blocks)):
            comp = matmul(blocks[k - 1], blocks[k], cols=dims[k + 1])
            if any(any(row) for row in comp):
                raise ValueError(f"boundary_{k} o boundary_{k + 1} is not zero")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))


def _rank(block: Block, cols: int) -> int:
    if not block or cols == 0:
        return 0
    return sum(1 for d in invariant_factors([list(r) for r in block]) if d)


def homology_of_complex(c: ChainComplex, k: int) -> FGAbelianGroup:
    """``H_k = ker d_k / im d_{k+1}``.

    Computed as the cokernel of ``d_{k+1}`` with the rank of ``d_k``
    removed; this is valid because ``ker d_k`` is a direct summand of the
    free group of ``k``-chains.
    """
    if not 0 <= k <= c.top:
        raise ValueError(f"degree {k} outside 0..{c.top}")
    rank_out = _rank(c.boundaries[k - 1], c.dims[k]) if k >= 1 else 0
    if k < c.top:
        coker = canonicalize(PresentationMatrix(c.dims[k], c.boundaries[k]))
    else:
        coker = FGAbelianGroup(c.dims[k])
    return FGAbelianGroup(coker.rank - rank_out, coker.torsion)


def homology(c: ChainComplex) -> list[FGAbelianGroup]:
    return [homology_of_complex(c, k) for k in range(c.top + 1)]


def builtin_complex(kind: str, arg: int | None = None) -> ChainComplex:
    """``point``, ``sphere`` (``arg`` = dimension) or ``lens`` (``arg`` = p).

    >>> [str(g) for g in homology(builtin_complex("lens", 7))]
    ['Z', 'Z_7', '0', 'Z']
    """
    if kind == "point":
        return ChainComplex((1,), ())
    if kind == "sphere":
        if arg is None or arg < 0:
            raise ValueError("sphere needs a dimension >= 0")
        if arg == 0:
            return ChainComplex((2,), ())
        if arg == 1:
            return ChainComplex((2, 2), (((-1, 1), (1, -1)),))
        dims = (1,) + (0,) * (arg - 1) + (1,)
        blocks = [tuple(tuple(0 for _ in range(dims[k])) for _ in range(dims[k - 1])) for k in range(1, arg + 1)]
        return ChainComplex(dims, tuple(blocks))
    if kind == "lens":
        if arg is None or arg < 2:
            raise ValueError("lens space needs p >= 2")
        return ChainComplex((1, 1, 1, 1), (((0,),), ((arg,),), ((0,),)))
    raise ValueError(f"unknown builtin complex {kind!r}")


def parse_builtin(spec: str) -> ChainComplex:
    """``"point"``, ``"sphere:3"``, ``"lens:5"``."""
    kind, _, arg = spec.partition(":")
    return builtin_complex(kind.strip(), int(arg) if arg else None)


def tensor_product(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """Cellular chains of the product, Koszul signs: d(a x b) = da x b + (-1)^|a| a x db."""
    top = c1.top + c2.top
    # basis of degree n: (i, a, b) for i + j = n, a < dims1[i], b < dims2[j]
    basis: list[list[tuple[int, int, int]]] = []
    for n in range(top + 1):
        basis.append(
            [
                (i, a, b)
                for i in range(max(0, n - c2.top), min(n, c1.top) + 1)
                for a in range(c1.dims[i])
                for b in range(c2.dims[n - i])
            ]
        )
    index = [{cell: pos for pos, cell in enumerate(cells)} for cells in basis]
    blocks = []
    for n in range(1, top + 1):
        m = _zeros(len(basis[n - 1]), len(basis[n]))
        for col, (i, a, b) in enumerate(basis[n]):
            j = n - i
            if i >= 1:
                d1 = c1.boundaries[i - 1]
                for a2 in range(c1.dims[i - 1]):
                    if d1[a2][a]:
                        m[index[n - 1][(i - 1, a2, b)]][col] += d1[a2][a]
            if j >= 1:
                d2 = c2.boundaries[j - 1]
                sign = -1 if i % 2 else 1
                for b2 in range(c2.dims[j - 1]):
                    if d2[b2][b]:
                        m[index[n - 1][(i, a, b2)]][col] += sign * d2[b2][b]
        blocks.append(tuple(tuple(r) for r in m))
    return ChainComplex(tuple(len(cells) for cells in basis), tuple(blocks))


def wedge_sum(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """One-point union identifying the 0-cell at index 0 of each complex."""
    if not c1.dims[0] or not c2.dims[0]:
        raise ValueError("both complexes need a base 0-cell")
    top = max(c1.top, c2.top)

    def dim(c: ChainComplex, k: int) -> int:
        return c.dims[k] if k <= c.top else 0

    dims = [dim(c1, k) + dim(c2, k) for k in range(top + 1)]
    dims[0] -= 1
    blocks = []
    for k in range(1, top + 1):
        m = _zeros(dims[k - 1], dims[k])
        r1, k1 = dim(c1, k - 1), dim(c1, k)
        if k <= c1.top:
            for r in range(r1):
                for c in range(k1):
                    m[r][c] = c1.boundaries[k - 1][r][c]
        if k <= c2.top:
            for r in range(dim(c2, k - 1)):
                if k == 1:
                    # base cell of c2 merges into row 0, the rest shift by r1 - 1
                    target = 0 if r == 0 else r1 + r - 1
                else:
                    target = r1 + r
                for c in range(dim(c2, k)):
                    m[target][k1 + c] += c2.boundaries[k - 1][r][c]
        blocks.append(tuple(tuple(r) for r in m))
    return ChainComplex(tuple(dims), tuple(blocks))
