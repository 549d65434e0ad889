"""Necessary conditions on a target family coming from torsion.

Every torsion factor a bouquet part of dimension ``d`` contributes in degree
``j`` of the Reeb space reappears, by duality on the part, in degree
``2n - d - 1 - j``; the part's ``H_0`` also adds a ``Z`` in degree ``n - d``.
The checkers below turn that bookkeeping into verdicts.

Rule identifiers used in certificates:

``g0-trivial``, ``gn-nontrivial``
    the target family is well formed.
``codim-one-free``
    ``G_{n-1}`` is torsion free.
``top-degree-free``
    ``G_n`` is torsion free.
``single-torsion``
    one torsion degree ``j`` forces ``j < n-1``, ``2j-n+1 > 0`` and
    ``rank G_{2j-n+1} > 0``.
``two-torsion``
    two torsion degrees; a degree whose torsion is not a summand of the
    other's needs its own self-dual carrier.
``three-torsion``
    three torsion degrees not arranged symmetrically need two positive-rank
    degrees.
``prime-power-windows``
    disjoint prime-power classes occupying ordered degree ranges.
``isolated-subgroups``
    finite groups sitting as unique subgroups in an odd number of degrees.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import factorint

from .bubbling import TargetFamily
from .groups import (
    DEFAULT_ORDER_BOUND,
    UNBOUNDED,
    FGAbelianGroup,
    complement,
    count_subgroups_isomorphic_to,
    is_summand,
    shares_canonical_factor,
)


class Status(str, enum.Enum):
    CONSISTENT = "Consistent"
    INFEASIBLE = "Infeasible"
    HYPOTHESIS_NOT_MET = "HypothesisNotMet"
    UNVERIFIABLE = "Unverifiable"


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str
    witness: str

    def __str__(self) -> str:
        return f"{self.status.value} [{self.rule}] {self.witness}"


def _ok(rule: str, witness: str) -> Verdict:
    return Verdict(Status.CONSISTENT, rule, witness)


def _bad(rule: str, witness: str) -> Verdict:
    return Verdict(Status.INFEASIBLE, rule, witness)


def _require(rule: str, checks: Iterable[tuple[bool, str]], ok_witness: str) -> list[Verdict]:
    failed = [_bad(rule, w) for passed, w in checks if not passed]
    return failed or [_ok(rule, ok_witness)]


def _rank_at(t: TargetFamily, j: int) -> int:
    return t.rank(j) if 0 <= j <= t.n else 0


def necessary_conditions(t: TargetFamily) -> list[Verdict]:
    n = t.n
    out = [
        (_ok if t[0].is_trivial else _bad)("g0-trivial", f"G_0 = {t[0]}"),
        (_bad if t[n].is_trivial else _ok)("gn-nontrivial", f"G_{n} = {t[n]}"),
        (_ok if t[n - 1].is_free else _bad)("codim-one-free", f"T G_{n - 1} = {t[n - 1].torsion_part}"),
        (_ok if t[n].is_free else _bad)("top-degree-free", f"T G_{n} = {t[n].torsion_part}"),
    ]
    support = t.torsion_support
    positive = t.positive_rank_degrees()

    if len(support) == 1:
        (j,) = support
        w = 2 * j - n + 1
        checks = [(j < n - 1, f"torsion degree j = {j} is not < n-1 = {n - 1}"),
                  (w > 0, f"2j-n+1 = {w} <= 0")]
        if w > 0:
            checks.append((_rank_at(t, w) > 0, f"rank G_{w} = {_rank_at(t, w)}"))
        out += _require("single-torsion", checks, f"j = {j}, rank G_{w} = {_rank_at(t, w)}")

    elif len(support) == 2:
        j1, j2 = support
        t1, t2 = t[j1].torsion_part, t[j2].torsion_part
        checks = [(j1 < n - 1 and j2 < n - 1, f"torsion degrees {j1}, {j2} not both < n-1 = {n - 1}")]
        fired = False
        for a, b, ta, tb in ((j1, j2, t1, t2), (j2, j1, t2, t1)):
            if is_summand(ta, tb):
                continue
            fired = True
            d = 2 * n - 2 * a - 1
            w = 2 * a - n + 1
            checks.append((d < n, f"T G_{a} = {ta} is not a summand of T G_{b} = {tb}, so a carrier of dimension {d} < n is needed"))
            checks.append((_rank_at(t, w) > 0, f"T G_{a} = {ta} is not a summand of T G_{b} = {tb}, but rank G_{w} = {_rank_at(t, w)}"))
        if fired:
            checks.append((len(positive) >= 2, f"positive-rank degrees in 1..n-1: {positive} (need at least 2)"))
        out += _require("two-torsion", checks, f"torsion degrees {j1}, {j2}")

    elif len(support) == 3:
        j1, j2, j3 = support
        asymmetric = t[j1].torsion_part != t[j3].torsion_part or 2 * j2 != j1 + j3
        checks = [(j3 <= n - 1, f"top torsion degree {j3} > n-1")]
        if asymmetric:
            checks.append((len(positive) >= 2, f"torsion degrees {support} are not symmetric; positive-rank degrees in 1..n-1: {positive} (need at least 2)"))
        out += _require("three-torsion", checks, f"torsion degrees {support}")
    return out


def overall_status(verdicts: Sequence[Verdict]) -> Status:
    statuses = {v.status for v in verdicts}
    for s in (Status.INFEASIBLE, Status.HYPOTHESIS_NOT_MET, Status.UNVERIFIABLE):
        if s in statuses:
            return s
    return Status.CONSISTENT


# prime-power classes ------------------------------------------------------


def _prime_power(q: int) -> tuple[int, int]:
    f = factorint(q) if q > 1 else {}
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return int(p), int(e)


@dataclass(frozen=True)
class PrimePowerPartition:
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        sets = tuple(frozenset(int(q) for q in s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ValueError("partition needs at least one set")
        seen: set[int] = set()
        for s in sets:
            if not s:
                raise ValueError("partition sets must be non-empty")
            for q in s:
                _prime_power(q)
            if seen & s:
                raise ValueError(f"sets overlap in {sorted(seen & s)}")
            seen |= s


def degrees_carrying(t: TargetFamily, orders: Iterable[int]) -> list[int]:
    keys = {_prime_power(q) for q in orders}
    return [j for j, g in enumerate(t.groups) if keys & set(g.factors())]


def check_thm5(t: TargetFamily, partition: PrimePowerPartition) -> Verdict:
    rule = "prime-power-windows"
    n = t.n
    degree_sets = [degrees_carrying(t, s) for s in partition.sets]
    for i, ds in enumerate(degree_sets):
        if not ds:
            return Verdict(Status.HYPOTHESIS_NOT_MET, rule, f"no degree carries a factor from set {i + 1} {sorted(partition.sets[i])}")
    for i in range(len(degree_sets) - 1):
        if max(degree_sets[i]) >= min(degree_sets[i + 1]):
            return Verdict(
                Status.HYPOTHESIS_NOT_MET, rule,
                f"degree ranges not ordered: max {degree_sets[i]} >= min {degree_sets[i + 1]}",
            )
    for i, ds in enumerate(degree_sets):
        lo, hi = max(2 * min(ds) - n + 1, 1), min(2 * max(ds) - n + 1, n - 1)
        if not any(_rank_at(t, j) > 0 for j in range(lo, hi + 1)):
            return _bad(rule, f"set {i + 1} occupies degrees {ds}; no positive rank in window [{2 * min(ds) - n + 1}, {2 * max(ds) - n + 1}] within 1..{n - 1}")
    positive = t.positive_rank_degrees()
    k = len(partition.sets)
    if len(positive) < k:
        return _bad(rule, f"only {len(positive)} positive-rank degrees {positive}, need {k}")
    return _ok(rule, f"degree sets {degree_sets}")


# isolated subgroups -------------------------------------------------------


@dataclass(frozen=True)
class SubgroupFamily:
    pairs: tuple[tuple[FGAbelianGroup, frozenset[int]], ...]

    def __post_init__(self) -> None:
        pairs = tuple((h, frozenset(int(j) for j in a)) for h, a in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("family needs at least one pair")
        for h, a in pairs:
            if not h.is_finite or h.is_trivial:
                raise ValueError(f"H = {h} must be finite and non-trivial")
            if not a:
                raise ValueError("degree sets must be non-empty")


def check_thm6(t: TargetFamily, family: SubgroupFamily, order_bound: int = DEFAULT_ORDER_BOUND) -> Verdict:
    rule = "isolated-subgroups"
    n = t.n

    def unmet(msg: str) -> Verdict:
        return Verdict(Status.HYPOTHESIS_NOT_MET, rule, msg)

    hs = [h for h, _ in family.pairs]
    if len(set(hs)) != len(hs):
        return unmet("the groups H_j are not pairwise non-isomorphic")
    sets = [a for _, a in family.pairs]
    if len(set(sets)) != len(sets):
        return unmet("the degree sets A_j are not pairwise distinct")
    unverifiable = []
    for idx, (h, a) in enumerate(family.pairs, start=1):
        if any(not 1 <= j <= n - 1 for j in a):
            return unmet(f"A_{idx} = {sorted(a)} leaves 1..{n - 1}")
        where = frozenset(j for j in range(1, n) if is_summand(h, t[j]))
        if where != a:
            return unmet(f"H_{idx} = {h} is a summand exactly in degrees {sorted(where)}, not A_{idx} = {sorted(a)}")
        if len(a) % 2 == 0:
            return unmet(f"|A_{idx}| = {len(a)} is even")
        for j in sorted(a):
            rest = complement(h, t[j])
            if shares_canonical_factor(h, rest):
                return unmet(f"G_{j} = {t[j]} = H_{idx} + {rest} shares a cyclic factor with H_{idx}")
            count = count_subgroups_isomorphic_to(t[j], h, order_bound)
            if count is UNBOUNDED:
                unverifiable.append(f"|T G_{j}| = {t[j].torsion_order} exceeds the enumeration bound {order_bound}")
            elif count != 1:
                return unmet(f"G_{j} has {count} subgroups isomorphic to H_{idx} = {h}, not exactly one")
        for j in range(1, n):
            if j not in a and shares_canonical_factor(h, t[j]):
                return unmet(f"G_{j} = {t[j]} shares a cyclic factor with H_{idx} = {h} outside A_{idx}")
    if unverifiable:
        return Verdict(Status.UNVERIFIABLE, rule, "; ".join(unverifiable))
    for idx, (_, a) in enumerate(family.pairs, start=1):
        if not any(_rank_at(t, 2 * j - n + 1) > 0 for j in a):
            ws = {j: 2 * j - n + 1 for j in sorted(a)}
            return _bad(rule, f"no j in A_{idx} has rank G_(2j-n+1) > 0; checked degrees {ws}")
    positive = t.positive_rank_degrees()
    if len(positive) < len(family.pairs):
        return _bad(rule, f"only {len(positive)} positive-rank degrees {positive}, need {len(family.pairs)}")
    return _ok(rule, "all hypotheses hold and the rank conclusions are satisfied")
