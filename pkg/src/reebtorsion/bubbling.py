"""Homology update of a Reeb space under (normal) bubbling operations.

For a generating polyhedron that is a bouquet of closed orientable
manifolds ``S_1 v ... v S_k`` inside an ``n``-dimensional Reeb space, each
part of dimension ``d`` adds ``H_{i-(n-d)}(S_j)`` to degree ``i < n`` and the
operation as a whole adds one ``Z`` in degree ``n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .groups import TRIVIAL, Z, FGAbelianGroup, complement, direct_sum
from .manifolds import Bouquet, ManifoldProfile, validate_profile


class OpKind(str, enum.Enum):
    M = "M"
    S = "S"
    TRIVIAL_M = "trivial-M"
    TRIVIAL_S = "trivial-S"


@dataclass(frozen=True)
class ReebState:
    n: int
    homology: tuple[FGAbelianGroup, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "homology", tuple(self.homology))
        if self.n < 1:
            raise ValueError("target dimension must be positive")
        if len(self.homology) != self.n + 1:
            raise ValueError(f"need {self.n + 1} homology groups, got {len(self.homology)}")
        if self.homology[0] != Z:
            raise ValueError(f"H_0 must be Z for a connected Reeb space, got {self.homology[0]}")

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.homology)) + ")"


@dataclass(frozen=True)
class BubblingOp:
    kind: OpKind
    polyhedron: Bouquet

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", OpKind(self.kind))


@dataclass(frozen=True)
class Plan:
    initial: ReebState
    ops: tuple[BubblingOp, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def n(self) -> int:
        return self.initial.n


@dataclass(frozen=True)
class LedgerEntry:
    """What one operation added, degree by degree (``delta[n]`` is always ``Z``)."""

    index: int
    kind: OpKind
    parts: tuple[str, ...]
    delta: tuple[FGAbelianGroup, ...]


class InvalidOperation(ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"op {index}: {message}")
        self.index = index


def initial_disc_state(n: int) -> ReebState:
    """Reeb space of a special generic map onto a disc: contractible."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return ReebState(n, (Z,) + (TRIVIAL,) * n)


def contribution(p: ManifoldProfile, n: int, i: int) -> FGAbelianGroup:
    """Summand that part ``p`` adds to degree ``i`` of an ``n``-dimensional Reeb space."""
    if p.dim >= n:
        raise InvalidOperation(f"{p.name} has dimension {p.dim} >= n = {n}")
    if not 0 <= i <= n:
        raise ValueError(f"degree {i} outside 0..{n}")
    if i == n:
        return TRIVIAL
    shifted = i - (n - p.dim)
    # the fundamental class of p never reaches degree n
    if 0 <= shifted <= p.dim - 1:
        return p[shifted]
    return TRIVIAL


def op_delta(op: BubblingOp, n: int) -> tuple[FGAbelianGroup, ...]:
    for part in op.polyhedron.parts:
        if part.dim > n - 1:
            raise InvalidOperation(f"part {part.name} has dimension {part.dim} > n - 1 = {n - 1}")
        if part.embeds_in is not None and part.embeds_in > n:
            raise InvalidOperation(f"part {part.name} is only known to embed in R^{part.embeds_in}")
        violation = validate_profile(part)
        if violation is not None:
            raise InvalidOperation(f"part {part.name} is not a closed orientable profile: {violation}")
    lower = [direct_sum(*(contribution(p, n, i) for p in op.polyhedron.parts)) for i in range(n)]
    return tuple(lower) + (Z,)


def apply_op(state: ReebState, op: BubblingOp) -> ReebState:
    delta = op_delta(op, state.n)
    return ReebState(state.n, tuple(direct_sum(h, g) for h, g in zip(state.homology, delta)))


def apply_plan(plan: Plan) -> tuple[ReebState, tuple[LedgerEntry, ...]]:
    state = plan.initial
    ledger = []
    for index, op in enumerate(plan.ops):
        try:
            delta = op_delta(op, state.n)
        except InvalidOperation as exc:
            raise InvalidOperation(str(exc), index) from None
        state = ReebState(state.n, tuple(direct_sum(h, g) for h, g in zip(state.homology, delta)))
        ledger.append(LedgerEntry(index, op.kind, tuple(p.name for p in op.polyhedron.parts), delta))
    return state, tuple(ledger)


@dataclass(frozen=True)
class TargetFamily:
    """The groups ``G_0..G_n`` a plan should add to the Reeb space homology."""

    n: int
    groups: tuple[FGAbelianGroup, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(self.groups))
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.groups) != self.n + 1:
            raise ValueError(f"need {self.n + 1} groups, got {len(self.groups)}")

    def __getitem__(self, j: int) -> FGAbelianGroup:
        return self.groups[j] if 0 <= j <= self.n else TRIVIAL

    def rank(self, j: int) -> int:
        return self[j].rank

    def issues(self) -> list[str]:
        out = []
        if not self.groups[0].is_trivial:
            out.append(f"G_0 = {self.groups[0]} must be trivial")
        if self.groups[self.n].is_trivial:
            out.append(f"G_{self.n} must be non-trivial")
        return out

    @property
    def torsion_support(self) -> list[int]:
        return [j for j, g in enumerate(self.groups) if not g.is_free]

    def positive_rank_degrees(self, lo: int = 1, hi: int | None = None) -> list[int]:
        hi = self.n - 1 if hi is None else hi
        return [j for j in range(lo, hi + 1) if self.rank(j) > 0]

    def __str__(self) -> str:
        return "{" + ", ".join(f"G_{j}={g}" for j, g in enumerate(self.groups)) + "}"


def delta_family(initial: ReebState, final: ReebState) -> TargetFamily | None:
    if initial.n != final.n:
        raise ValueError("states live over different target dimensions")
    groups = [complement(a, b) for a, b in zip(initial.homology, final.homology)]
    if any(g is None for g in groups):
        return None
    return TargetFamily(initial.n, tuple(groups))


def realized_family(plan: Plan) -> TargetFamily:
    final, _ = apply_plan(plan)
    family = delta_family(plan.initial, final)
    assert family is not None  # growth is by direct summands only
    return family


@dataclass(frozen=True)
class SourceHomologyReport:
    m: int
    n: int
    bound: int  # degrees l <= bound are reported
    groups: tuple[FGAbelianGroup, ...]
    hypotheses: tuple[str, ...]


_FOLD_HYPOTHESES = (
    "the fold map is simple (injective on the singular set into the Reeb space)",
    "inverse images of regular values are disjoint unions of almost-spheres",
    "singular points have index 0 or 1",
)


def infer_source_homology(w: ReebState, m: int, special_generic: bool = False) -> SourceHomologyReport:
    """Low-degree homology of the source manifold read off the Reeb space.

    Valid in degrees ``l < m - n`` (``l <= m - n`` for special generic maps)
    under hypotheses that are recorded in the report but not checked.
    """
    k = m - w.n
    if k <= 1:
        raise ValueError(f"need m - n > 1, got m - n = {k}")
    bound = k if special_generic else k - 1
    groups = tuple(w.homology[l] if l <= w.n else TRIVIAL for l in range(bound + 1))
    hyps = ("the map is special generic",) if special_generic else _FOLD_HYPOTHESES
    return SourceHomologyReport(m, w.n, bound, groups, hyps)


def regroup(ops: Sequence[BubblingOp], count: int, kind: OpKind = OpKind.TRIVIAL_M) -> tuple[BubblingOp, ...]:
    """Merge consecutive ops into ``count`` bouquets, keeping the order of parts."""
    if not 1 <= count <= len(ops):
        raise ValueError(f"cannot regroup {len(ops)} ops into {count}")
    size, extra = divmod(len(ops), count)
    out, start = [], 0
    for g in range(count):
        stop = start + size + (g < extra)
        chunk = ops[start:stop]
        parts = tuple(p for op in chunk for p in op.polyhedron.parts)
        kinds = {op.kind for op in chunk}
        out.append(BubblingOp(chunk[0].kind if len(kinds) == 1 else kind, Bouquet(parts)))
        start = stop
    return tuple(out)
