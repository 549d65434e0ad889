"""Constructive plans realizing target families.

All planners return a :class:`~reebtorsion.bubbling.Plan` starting from the
disc state, and every returned plan has been replayed against the target
before it leaves this module.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .bubbling import (
    BubblingOp,
    OpKind,
    Plan,
    TargetFamily,
    contribution,
    initial_disc_state,
    realized_family,
    regroup,
)
from .checks import Status, Verdict
from .groups import TRIVIAL, FGAbelianGroup, complement, direct_sum, is_summand
from .manifolds import Bouquet, ManifoldProfile, lemma1_transform, sphere, validate_profile


class HypothesisNotMet(Exception):
    def __init__(self, rule: str, witness: str):
        super().__init__(f"[{rule}] {witness}")
        self.verdict = Verdict(Status.HYPOTHESIS_NOT_MET, rule, witness)


def _require(rule: str, checks: Iterable[tuple[bool, str]]) -> None:
    for passed, witness in checks:
        if not passed:
            raise HypothesisNotMet(rule, witness)


def _well_formed(t: TargetFamily, rule: str) -> None:
    _require(rule, [(not t.issues(), "; ".join(t.issues())), (t[t.n].is_free, f"G_{t.n} = {t[t.n]} is not free")])


def _verified(plan: Plan, t: TargetFamily) -> Plan:
    got = realized_family(plan)
    if got != t:
        raise AssertionError(f"plan realizes {got}, expected {t}")
    return plan


def _disc_plan(t: TargetFamily, ops: Sequence[BubblingOp], provenance: str) -> Plan:
    return _verified(Plan(initial_disc_state(t.n), tuple(ops), provenance), t)


def _points(count: int, kind: OpKind) -> list[BubblingOp]:
    return [BubblingOp(kind, Bouquet.point()) for _ in range(count)]


# free targets ---------------------------------------------------------------


def plan_prop3(t: TargetFamily) -> Plan:
    """One bouquet of spheres for all lower degrees, then points."""
    rule = "free-bouquet"
    _well_formed(t, rule)
    _require(rule, [(g.is_free, f"G_{j} = {g} has torsion") for j, g in enumerate(t.groups)])
    spheres = [sphere(t.n - j) for j in range(1, t.n) for _ in range(t.rank(j))]
    ops = [BubblingOp(OpKind.TRIVIAL_S, Bouquet(spheres))] + _points(t.rank(t.n) - 1, OpKind.TRIVIAL_S)
    return _disc_plan(t, ops, "free bouquet of spheres")


def plan_prop4(t: TargetFamily) -> Plan:
    """One sphere per operation; needs enough degree-n rank to pay for them."""
    rule = "free-singletons"
    _well_formed(t, rule)
    _require(rule, [(g.is_free, f"G_{j} = {g} has torsion") for j, g in enumerate(t.groups)])
    lower = sum(t.rank(j) for j in range(1, t.n))
    _require(rule, [(lower <= t.rank(t.n), f"sum of ranks below n = {lower} > rank G_{t.n} = {t.rank(t.n)}")])
    ops = [BubblingOp(OpKind.TRIVIAL_S, Bouquet.of(sphere(t.n - j))) for j in range(1, t.n) for _ in range(t.rank(j))]
    ops += _points(t.rank(t.n) - lower, OpKind.TRIVIAL_S)
    return _disc_plan(t, ops, "single-sphere operations")


# torsion carriers -----------------------------------------------------------


def carrier_delta(carriers: Sequence[ManifoldProfile], n: int) -> list[FGAbelianGroup]:
    return [direct_sum(*(contribution(c, n, i) for c in carriers)) for i in range(n)]


def complete_with_spheres(t: TargetFamily, carriers: Sequence[ManifoldProfile], rule: str, provenance: str) -> Plan:
    """Bouquet of ``carriers`` plus whatever spheres make up the remaining free rank."""
    _well_formed(t, rule)
    n = t.n
    for c in carriers:
        _require(rule, [
            (c.dim < n, f"carrier {c.name} has dimension {c.dim} >= n = {n}"),
            (c.embeds_in is None or c.embeds_in <= n, f"carrier {c.name} is only known to embed in R^{c.embeds_in}"),
            (validate_profile(c) is None, f"carrier {c.name}: {validate_profile(c)}"),
        ])
    spheres = []
    for i, got in enumerate(carrier_delta(carriers, n)):
        rest = complement(got, t[i])
        _require(rule, [(rest is not None, f"degree {i}: carriers contribute {got}, not a summand of G_{i} = {t[i]}")])
        _require(rule, [(rest.is_free, f"degree {i}: residual {rest} has torsion no sphere can supply")])
        if i == 0:
            _require(rule, [(rest.is_trivial, f"degree 0: residual {rest} must vanish")])
        spheres += [sphere(n - i) for _ in range(rest.rank)]
    ops = [BubblingOp(OpKind.TRIVIAL_M, Bouquet(tuple(carriers) + tuple(spheres)))]
    ops += _points(t.rank(n) - 1, OpKind.TRIVIAL_M)
    return _disc_plan(t, ops, provenance)


def _shape(c: ManifoldProfile, dim: int, expected: dict[int, FGAbelianGroup], label: str) -> list[tuple[bool, str]]:
    if c.dim != dim:
        return [(False, f"{label} {c.name} has dimension {c.dim}, need {dim}")]
    checks = [(validate_profile(c) is None, f"{label} {c.name}: {validate_profile(c)}")]
    for k in range(1, dim):
        want = expected.get(k, TRIVIAL)
        checks.append((c[k] == want, f"{label} {c.name}: H_{k} = {c[k]}, need {want}"))
    return checks


def plan_thm2(t: TargetFamily, carrier: ManifoldProfile) -> Plan:
    """Single torsion degree ``j`` carried by a ``(2n-2j-1)``-manifold."""
    rule = "single-carrier"
    _well_formed(t, rule)
    n = t.n
    support = t.torsion_support
    _require(rule, [(len(support) == 1, f"torsion support {support} is not a single degree")])
    (j,) = support
    dim = 2 * n - 2 * j - 1
    w = 2 * j - n + 1
    _require(rule, [(0 < dim < n, f"carrier dimension 2n-2j-1 = {dim} is not in 1..n-1")])
    _require(rule, _shape(carrier, dim, {n - j - 1: t[j].torsion_part}, "carrier"))
    _require(rule, [(t.rank(w) >= 1, f"rank G_{w} = {t.rank(w)}, need >= 1")])
    return complete_with_spheres(t, [carrier], rule, f"single torsion degree {j} carried by {carrier.name}")


def plan_thm4(t: TargetFamily, s1: ManifoldProfile, s2: ManifoldProfile, case: str) -> Plan:
    """Two torsion degrees ``j1 < j2`` carried by two manifolds.

    ``1a``/``1b``: each degree has its own self-dual carrier (the case
    label says which torsion group fails to be a summand of the other).
    ``2``: ``T G_j2 = T G_j1 + G``; ``s1`` carries ``G`` at ``j2`` and ``s2``
    carries ``T G_j1`` at both degrees. ``3`` is the mirror image.
    """
    rule = f"two-carriers-{case}"
    _well_formed(t, rule)
    n = t.n
    support = t.torsion_support
    _require(rule, [(len(support) == 2, f"torsion support {support} is not two degrees")])
    j1, j2 = support
    t1, t2 = t[j1].torsion_part, t[j2].torsion_part
    mixed = 2 * n - j1 - j2 - 1
    if case in ("1a", "1b"):
        if case == "1a":
            _require(rule, [(not is_summand(t1, t2), f"T G_{j1} = {t1} is a summand of T G_{j2} = {t2}")])
        else:
            _require(rule, [(not is_summand(t2, t1), f"T G_{j2} = {t2} is a summand of T G_{j1} = {t1}")])
        d1, d2 = 2 * n - 2 * j1 - 1, 2 * n - 2 * j2 - 1
        _require(rule, [(0 < d1 < n and 0 < d2 < n, f"carrier dimensions {d1}, {d2} not in 1..n-1")])
        _require(rule, _shape(s1, d1, {n - j1 - 1: t1}, "S1"))
        _require(rule, _shape(s2, d2, {n - j2 - 1: t2}, "S2"))
        ranks = [2 * j1 + 1 - n, 2 * j2 + 1 - n]
    elif case in ("2", "3"):
        big, small, jb, js = (j2, j1, t2, t1) if case == "2" else (j1, j2, t1, t2)
        rest = complement(js, jb)
        _require(rule, [(rest is not None, f"T G_{small} = {js} is not a summand of T G_{big} = {jb}")])
        d1 = 2 * n - 2 * big - 1
        _require(rule, [(0 < d1 < n and 0 < mixed < n, f"carrier dimensions {d1}, {mixed} not in 1..n-1")])
        _require(rule, _shape(s1, d1, {n - big - 1: rest}, "S1"))
        _require(rule, _shape(s2, mixed, {n - j1 - 1: js, n - j2 - 1: js}, "S2"))
        ranks = [2 * big + 1 - n, j1 + j2 + 1 - n]
    else:
        raise ValueError(f"unknown case {case!r}; expected 1a, 1b, 2 or 3")
    _require(rule, [(t.rank(w) > 0, f"rank G_{w} = {t.rank(w)}, need > 0") for w in ranks])
    return complete_with_spheres(t, [s1, s2], rule, f"two torsion degrees {j1}, {j2} via {s1.name}, {s2.name}")


# search ---------------------------------------------------------------------


def search_candidates(catalog: Sequence[ManifoldProfile], n: int) -> list[ManifoldProfile]:
    """Torsion carriers usable in dimension ``n``: catalog entries and their ``lemma1_transform`` images."""
    pool: list[ManifoldProfile] = []
    for p in catalog:
        if validate_profile(p) is not None:
            continue
        pool.append(p)
        if p.dim >= 3 and p.dim % 2:
            k2 = 2
            while p.dim + k2 - 1 < n:
                try:
                    pool.append(lemma1_transform(p, k2))
                except ValueError:
                    break
                k2 += 1
    out: list[ManifoldProfile] = []
    for p in pool:
        if not p.has_torsion or p.dim >= n or (p.embeds_in is not None and p.embeds_in > n):
            continue
        if any(q.same_homology(p) for q in out):
            continue
        out.append(p)
    out.sort(key=lambda p: (-direct_sum(*p.homology).torsion_order, p.dim, p.name))
    return out


def plan_search(t: TargetFamily, catalog: Sequence[ManifoldProfile], max_carriers: int = 3) -> Plan | None:
    """Depth-first search over multisets of at most ``max_carriers`` carriers.

    Returns the first plan in canonical order or ``None`` when nothing
    within the bounds works; ``None`` does not prove infeasibility.
    """
    if not catalog:
        raise ValueError("empty catalog")
    n = t.n
    if t.issues() or not t[n].is_free:
        return None
    cands = search_candidates(catalog, n)
    deltas = [carrier_delta([c], n) for c in cands]
    goal = t.groups[:n]

    def dfs(start: int, chosen: list[int], acc: list[FGAbelianGroup]) -> list[int] | None:
        if all(complement(a, g).is_free for a, g in zip(acc, goal)):
            return chosen
        if len(chosen) == max_carriers:
            return None
        for idx in range(start, len(cands)):
            nxt = [direct_sum(a, b) for a, b in zip(acc, deltas[idx])]
            if all(is_summand(a, g) for a, g in zip(nxt, goal)):
                found = dfs(idx, chosen + [idx], nxt)
                if found is not None:
                    return found
        return None

    picked = dfs(0, [], [TRIVIAL] * n)
    if picked is None:
        return None
    carriers = [cands[i] for i in picked]
    names = ", ".join(c.name for c in carriers) or "no carriers"
    return complete_with_spheres(t, carriers, "search", f"search: {names}")


def prop5_truncate(plan: Plan, h: FGAbelianGroup) -> Plan:
    """Regroup ``plan`` into ``rank h`` operations; lower degrees are unchanged."""
    if not h.is_free:
        raise ValueError(f"H = {h} must be free")
    if not 1 <= h.rank <= len(plan.ops):
        raise ValueError(f"rank H = {h.rank} must lie in 1..{len(plan.ops)}")
    return Plan(plan.initial, regroup(plan.ops, h.rank), f"{plan.provenance}; regrouped into {h.rank} ops")
