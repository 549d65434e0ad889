"""Finitely generated abelian groups in canonical (primary) form.

A group is stored as its free rank plus a sorted tuple of
``(p, e, m)`` records meaning ``m`` copies of ``Z_{p^e}``.  Because the
primary decomposition is unique, isomorphism is plain equality.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import lcm, prod
from typing import Iterable, NamedTuple, Sequence

from sympy import factorint, isprime

from .snf import invariant_factors

DEFAULT_ORDER_BOUND = 512


class TorsionFactor(NamedTuple):
    p: int
    e: int
    m: int

    @property
    def order(self) -> int:
        return self.p**self.e


@dataclass(frozen=True)
class FGAbelianGroup:
    rank: int = 0
    torsion: tuple[TorsionFactor, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        torsion = tuple(TorsionFactor(*t) for t in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        for t in torsion:
            if not isprime(t.p):
                raise ValueError(f"{t.p} is not prime")
            if t.e < 1 or t.m < 1:
                raise ValueError(f"bad exponent/multiplicity in {tuple(t)}")
        keys = [(t.p, t.e) for t in torsion]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("torsion records must be strictly sorted by (p, e)")

    # construction -----------------------------------------------------

    @classmethod
    def from_factors(cls, rank: int, factors: Iterable[tuple[int, int]] | Counter) -> FGAbelianGroup:
        """Build from a multiset of ``(p, e)`` prime-power factors."""
        counts = factors if isinstance(factors, Counter) else Counter(factors)
        torsion = tuple(TorsionFactor(p, e, m) for (p, e), m in sorted(counts.items()) if m > 0)
        return cls(rank, torsion)

    @classmethod
    def from_divisors(cls, *divisors: int) -> FGAbelianGroup:
        """Direct sum of cyclic groups ``Z/d``; ``d = 0`` is ``Z``, ``d = 1`` vanishes.

        >>> str(FGAbelianGroup.from_divisors(0, 12))
        'Z + Z_3 + Z_4'
        """
        rank = 0
        factors: Counter = Counter()
        for d in divisors:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in factorint(d).items():
                    factors[(int(p), int(e))] += 1
        return cls.from_factors(rank, factors)

    @classmethod
    def free(cls, rank: int) -> FGAbelianGroup:
        return cls(rank)

    @classmethod
    def cyclic(cls, n: int) -> FGAbelianGroup:
        return cls.from_divisors(n)

    # queries ----------------------------------------------------------

    def factors(self) -> Counter:
        """Prime-power factor multiset, keyed by ``(p, e)``."""
        return Counter({(t.p, t.e): t.m for t in self.torsion})

    def elementary_divisors(self) -> list[int]:
        return [t.order for t in self.torsion for _ in range(t.m)]

    @property
    def torsion_part(self) -> FGAbelianGroup:
        return FGAbelianGroup(0, self.torsion)

    @property
    def torsion_order(self) -> int:
        return prod(t.order**t.m for t in self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def min_generators(self) -> int:
        """Smallest size of a generating set of the torsion part."""
        per_prime = Counter()
        for t in self.torsion:
            per_prime[t.p] += t.m
        return max(per_prime.values(), default=0)

    def __add__(self, other: FGAbelianGroup) -> FGAbelianGroup:
        return direct_sum(self, other)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        for t in self.torsion:
            parts.append(f"Z_{t.order}" if t.m == 1 else f"Z_{t.order}^{t.m}")
        return " + ".join(parts) if parts else "0"


TRIVIAL = FGAbelianGroup()
Z = FGAbelianGroup(1)


def cyclic(n: int) -> FGAbelianGroup:
    return FGAbelianGroup.cyclic(n)


_TERM = re.compile(r"^(Z)(?:_(\d+))?(?:\^(\d+))?$")


def parse_group(text: str) -> FGAbelianGroup:
    """Parse the notation used by ``str``: ``"Z^2 + Z_4 + Z_9^3"``; ``"0"`` is trivial."""
    text = text.strip()
    if text in ("0", ""):
        return TRIVIAL
    divisors: list[int] = []
    for term in text.replace(" ", "").split("+"):
        match = _TERM.match(term)
        if not match:
            raise ValueError(f"cannot parse group term {term!r}")
        _, order, power = match.groups()
        divisors += [int(order) if order else 0] * (int(power) if power else 1)
    if any(d == 1 for d in divisors):
        raise ValueError("Z_1 is not a valid summand")
    return FGAbelianGroup.from_divisors(*divisors)


# presentations --------------------------------------------------------


@dataclass(frozen=True)
class PresentationMatrix:
    """``Z^generators`` modulo the span of the columns of ``entries``."""

    generators: int
    entries: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.generators < 0:
            raise ValueError("negative generator count")
        if rows and len(rows) != self.generators:
            raise ValueError(f"{len(rows)} rows for {self.generators} generators")
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged relation matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> PresentationMatrix:
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @property
    def relations(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def canonicalize(presentation: PresentationMatrix | Sequence[Sequence[int]]) -> FGAbelianGroup:
    """Canonical form of the presented group.

    >>> canonicalize([[2, 4], [6, 10]])
    FGAbelianGroup(rank=0, torsion=(TorsionFactor(p=2, e=1, m=2),))
    """
    if not isinstance(presentation, PresentationMatrix):
        presentation = PresentationMatrix.from_rows(presentation)
    g = presentation.generators
    if presentation.relations == 0:
        return FGAbelianGroup(g)
    diag = invariant_factors([list(r) for r in presentation.entries])
    nonzero = [d for d in diag if d != 0]
    return FGAbelianGroup.from_divisors(*nonzero, *([0] * (g - len(nonzero))))


# direct-sum calculus --------------------------------------------------


def direct_sum(*groups: FGAbelianGroup) -> FGAbelianGroup:
    return FGAbelianGroup.from_factors(
        sum(g.rank for g in groups),
        reduce(lambda acc, g: acc + g.factors(), groups, Counter()),
    )


def is_summand(h: FGAbelianGroup, g: FGAbelianGroup) -> bool:
    """True iff ``h + k == g`` for some ``k``."""
    return h.rank <= g.rank and not (h.factors() - g.factors())


def complement(h: FGAbelianGroup, g: FGAbelianGroup) -> FGAbelianGroup | None:
    """The unique ``k`` with ``h + k == g``, or ``None`` if ``h`` is not a summand."""
    if not is_summand(h, g):
        return None
    return FGAbelianGroup.from_factors(g.rank - h.rank, g.factors() - h.factors())


def shares_canonical_factor(g1: FGAbelianGroup, g2: FGAbelianGroup) -> bool:
    return bool(set(g1.factors()) & set(g2.factors()))


# subgroup counting ----------------------------------------------------


class Unbounded(enum.Enum):
    """Returned by :func:`count_subgroups_isomorphic_to` above the order bound."""

    UNBOUNDED = "unbounded"

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = Unbounded.UNBOUNDED


def _order_profile(elements: Iterable[tuple[int, ...]], moduli: Sequence[int], primes: Iterable[int], depth: int) -> tuple:
    """Counts of ``{x : p^k x = 0}`` for each prime and ``k <= depth``.

    These counts pin down a finite abelian group up to isomorphism.
    """
    elements = list(elements)
    out = []
    for p in sorted(primes):
        for k in range(1, depth + 1):
            q = p**k
            out.append(sum(all((q * x) % m == 0 for x, m in zip(el, moduli)) for el in elements))
    return tuple(out)


def count_subgroups_isomorphic_to(
    g: FGAbelianGroup, h: FGAbelianGroup, order_bound: int = DEFAULT_ORDER_BOUND
) -> int | Unbounded:
    """Number of subgroups of the torsion part of ``g`` isomorphic to ``h``.

    Enumerates subgroups generated by at most ``h.min_generators()``
    elements, pruning any partial span whose order does not divide
    ``|h|``.

    >>> count_subgroups_isomorphic_to(FGAbelianGroup.from_divisors(2, 2), cyclic(2))
    3
    """
    if h.rank:
        raise ValueError("subgroup counts are only defined for finite h")
    if h.is_trivial:
        return 1
    t = g.torsion_part
    if t.torsion_order > order_bound:
        return UNBOUNDED
    target_order = h.torsion_order
    if t.torsion_order % target_order:
        return 0
    moduli = t.elementary_divisors()
    zero = tuple(0 for _ in moduli)
    exponent = lcm(*h.elementary_divisors())
    candidates = [
        el
        for el in product(*(range(m) for m in moduli))
        if el != zero and all((exponent * x) % m == 0 for x, m in zip(el, moduli))
    ]

    def add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def extend(sub: frozenset, x: tuple[int, ...]) -> frozenset:
        multiples = [zero]
        cur = x
        while cur not in sub:
            multiples.append(cur)
            cur = add(cur, x)
        return frozenset(add(s, k) for s in sub for k in multiples)

    primes = {f.p for f in h.torsion}
    depth = max(f.e for f in h.torsion)
    wanted = _order_profile(
        product(*(range(m) for m in h.elementary_divisors())), h.elementary_divisors(), primes, depth
    )
    layer = {frozenset([zero])}
    found: set[frozenset] = set()
    for _ in range(h.min_generators()):
        nxt = set()
        for sub in layer:
            for x in candidates:
                if x in sub:
                    continue
                bigger = extend(sub, x)
                if target_order % len(bigger):
                    continue
                if len(bigger) == target_order:
                    found.add(bigger)
                else:
                    nxt.add(bigger)
        layer = nxt
    return sum(_order_profile(s, moduli, primes, depth) == wanted for s in found)
