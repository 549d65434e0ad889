"""Acceptance criteria. Each test prints one ``ACCEPTANCE <k> PASS|FAIL`` line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager
from itertools import product


from reebtorsion.bubbling import (
    BubblingOp,
    OpKind,
    Plan,
    TargetFamily,
    apply_op,
    apply_plan,
    initial_disc_state,
    op_delta,
    realized_family,
)
from reebtorsion.chain import builtin_complex, homology, tensor_product
from reebtorsion.checks import Status, SubgroupFamily, check_thm6, necessary_conditions, overall_status
from reebtorsion.groups import TRIVIAL, Z, FGAbelianGroup, count_subgroups_isomorphic_to, cyclic, direct_sum, parse_group
from reebtorsion.manifolds import (
    Bouquet,
    barden5,
    default_catalog,
    lemma1_transform,
    lens,
    sphere,
    validate_profile,
)
from reebtorsion.planner import plan_prop3, plan_prop4, plan_search, plan_thm2, plan_thm4
from reebtorsion.snf import determinant, matmul, smith_normal_form

SEED = 20240611


class _Report:
    def __init__(self) -> None:
        self.detail = ""


@contextmanager
def criterion(number: int, title: str, capsys=None):
    report = _Report()
    start = time.perf_counter()
    ok = False
    try:
        yield report
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.2f}s{'; ' + report.detail if report.detail else ''})"
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)


# 1 ---------------------------------------------------------------------------------


def accept_round_fold_homology(capsys=None):
    with criterion(1, "l point ops on the disc give (Z, 0, ..., 0, Z^l), n<=6, l<=5, < 1 s", capsys) as r:
        start = time.perf_counter()
        cases = 0
        for n in range(1, 7):
            for count in range(1, 6):
                plan = Plan(initial_disc_state(n), (BubblingOp(OpKind.TRIVIAL_S, Bouquet.point()),) * count)
                final, _ = apply_plan(plan)
                assert final.homology == (Z,) + (TRIVIAL,) * (n - 1) + (FGAbelianGroup.free(count),)
                cases += 1
        elapsed = time.perf_counter() - start
        r.detail = f"{cases} cases"
        assert elapsed < 1.0


# 2 ---------------------------------------------------------------------------------


def accept_bubbling_engine_invariants(capsys=None):
    with criterion(2, "200 random ops: delta_n = Z and delta_(n-1) torsion-free", capsys) as r:
        rng = random.Random(SEED)
        catalog = default_catalog()
        violations = 0
        for _ in range(200):
            n = rng.randint(1, 7)
            pool = [p for p in catalog if p.dim <= n - 1 and (p.embeds_in is None or p.embeds_in <= n)]

            def random_op() -> BubblingOp:
                parts = tuple(rng.choice(pool) for _ in range(rng.randint(0, 3))) if pool else ()
                return BubblingOp(rng.choice(list(OpKind)), Bouquet(parts))

            state = initial_disc_state(n)
            for _ in range(rng.randint(0, 3)):
                state = apply_op(state, random_op())
            delta = op_delta(random_op(), n)
            violations += delta[n] != Z
            violations += not delta[n - 1].is_free
        r.detail = f"{violations} violations"
        assert violations == 0


# 3 ---------------------------------------------------------------------------------


def _kunneth(hx, hy):
    from math import gcd

    def cyc(g):
        return [0] * g.rank + g.elementary_divisors()

    def tensor(g, h):
        return FGAbelianGroup.from_divisors(*((gcd(a, b) if a and b else a or b) for a in cyc(g) for b in cyc(h)))

    def tor(g, h):
        return FGAbelianGroup.from_divisors(*(gcd(a, b) for a in g.elementary_divisors() for b in h.elementary_divisors()))

    out = []
    for k in range(len(hx) + len(hy) - 1):
        terms = [tensor(hx[i], hy[k - i]) for i in range(len(hx)) if 0 <= k - i < len(hy)]
        terms += [tor(hx[i], hy[k - 1 - i]) for i in range(len(hx)) if 0 <= k - 1 - i < len(hy)]
        out.append(direct_sum(*terms))
    return out


def accept_oracle_matches_catalog(capsys=None):
    with criterion(3, "chain homology equals profiles and Kunneth, < 5 s", capsys) as r:
        start = time.perf_counter()
        checks = 0
        assert homology(builtin_complex("point")) == [Z]
        checks += 1
        for d in range(1, 7):
            assert tuple(homology(builtin_complex("sphere", d))) == sphere(d).homology
            checks += 1
        for p in (2, 3, 5, 7, 25):
            assert tuple(homology(builtin_complex("lens", p))) == lens(p).homology
            checks += 1
        for a, b in product(range(1, 4), repeat=2):
            sa, sb = builtin_complex("sphere", a), builtin_complex("sphere", b)
            assert homology(tensor_product(sa, sb)) == _kunneth(homology(sa), homology(sb))
            checks += 1
        elapsed = time.perf_counter() - start
        r.detail = f"{checks} comparisons"
        assert elapsed < 5.0


# 4 ---------------------------------------------------------------------------------


def accept_smith_normal_form_properties(capsys=None):
    with criterion(4, "1000 random matrices <= 6x6, |entries| <= 100: D = UMV, divisibility, unimodular", capsys) as r:
        rng = random.Random(SEED)
        bad = 0
        for _ in range(1000):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            m = [[rng.randint(-100, 100) for _ in range(cols)] for _ in range(rows)]
            u, d, v = smith_normal_form(m)
            diag = [d[i][i] for i in range(min(rows, cols))]
            ok = matmul(matmul(u, m), v) == d
            ok &= all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
            ok &= all(x >= 0 for x in diag)
            ok &= all((b % a == 0) if a else b == 0 for a, b in zip(diag, diag[1:]))
            ok &= abs(determinant(u)) == 1 and abs(determinant(v)) == 1
            bad += not ok
        r.detail = f"{bad} failures"
        assert bad == 0


# 5 ---------------------------------------------------------------------------------


def _random_free_target(rng: random.Random) -> TargetFamily:
    n = rng.randint(1, 7)
    ranks = [0] + [rng.randint(0, 5) for _ in range(1, n)] + [rng.randint(1, 5)]
    return TargetFamily(n, tuple(FGAbelianGroup.free(x) for x in ranks))


def _prop4_target(rng: random.Random) -> TargetFamily:
    """Free target with sum of lower ranks <= rank G_n <= 5."""
    n = rng.randint(1, 7)
    ranks = [0] * n
    for _ in range(rng.randint(0, 5) if n > 1 else 0):
        ranks[rng.randint(1, n - 1)] += 1
    top = rng.randint(max(1, sum(ranks)), 5)
    return TargetFamily(n, tuple(FGAbelianGroup.free(x) for x in ranks + [top]))


def accept_planner_round_trip(capsys=None):
    with criterion(5, "prop3/prop4 on 100 free targets each, thm2 and thm4 fixtures replay exactly, < 10 s", capsys) as r:
        start = time.perf_counter()
        rng = random.Random(SEED)
        for _ in range(100):
            t = _random_free_target(rng)
            assert realized_family(plan_prop3(t)) == t
        for _ in range(100):
            t = _prop4_target(rng)
            assert realized_family(plan_prop4(t)) == t
        single = TargetFamily(5, tuple(parse_group(g) for g in ["0", "0", "Z", "Z_7", "0", "Z"]))
        assert realized_family(plan_thm2(single, lens(7))) == single
        double = TargetFamily(5, tuple(parse_group(g) for g in ["0", "Z", "Z + Z_5", "Z_5 + Z_25", "0", "Z"]))
        assert realized_family(plan_thm4(double, lens(25), lemma1_transform(lens(5), 2), "2")) == double
        elapsed = time.perf_counter() - start
        r.detail = "202 plans replayed"
        assert elapsed < 10.0


# 6 ---------------------------------------------------------------------------------


def small_targets():
    """n <= 5, rank <= 1 per degree, torsion in {0, Z_2, Z_3}; G_0 = 0, G_n != 0."""
    choices = [FGAbelianGroup.free(r) + t for r in (0, 1) for t in (TRIVIAL, cyclic(2), cyclic(3))]
    for n in range(1, 6):
        for middle in product(choices, repeat=n - 1):
            for top in choices:
                if not top.is_trivial:
                    yield TargetFamily(n, (TRIVIAL,) + middle + (top,))


def accept_checker_planner_consistency(capsys=None):
    with criterion(6, "exhaustive small targets: nothing Infeasible is realized by search, < 60 s", capsys) as r:
        start = time.perf_counter()
        catalog = default_catalog()
        total = infeasible = planned = conflicts = 0
        for t in small_targets():
            total += 1
            bad = overall_status(necessary_conditions(t)) is Status.INFEASIBLE
            infeasible += bad
            plan = plan_search(t, catalog, max_carriers=3)
            if plan is not None:
                planned += 1
                assert realized_family(plan) == t
                conflicts += bad
        elapsed = time.perf_counter() - start
        r.detail = f"{total} targets, {infeasible} infeasible, {planned} planned, {conflicts} conflicts"
        assert total == 7775
        assert conflicts == 0
        assert elapsed < 60.0


# 7 ---------------------------------------------------------------------------------


def accept_lemma1_torsion_degrees(capsys=None):
    with criterion(7, "lemma1_transform of L(2), L(5), k2 in 2..4: valid, torsion at degrees 1 and k2", capsys) as r:
        for p, k2 in product((2, 5), (2, 3, 4)):
            s = lemma1_transform(lens(p), k2)
            assert validate_profile(s) is None
            assert [k for k, g in enumerate(s.homology) if not g.is_free] == [1, k2]
            assert s[1].torsion_part == s[k2].torsion_part == cyclic(p)
        r.detail = "6 profiles"


# 8 ---------------------------------------------------------------------------------


def accept_subgroup_counts(capsys=None):
    with criterion(8, "count(Z_p^2, Z_p) = p+1 for p in 2,3,5,7; count(Z_2^2, Z_2) = 3", capsys) as r:
        got = {p: count_subgroups_isomorphic_to(FGAbelianGroup.from_divisors(p, p), cyclic(p)) for p in (2, 3, 5, 7)}
        assert got == {p: p + 1 for p in got}
        assert count_subgroups_isomorphic_to(parse_group("Z_2^2"), cyclic(2)) == 3
        r.detail = str(got)


# 9 ---------------------------------------------------------------------------------


def accept_isolated_subgroup_fixture(capsys=None):
    with criterion(9, "Barden5(Z_3^2) and S_(3,2)[L(5)] at n = 7: isolated-subgroup hypotheses hold, Consistent", capsys) as r:
        n = 7
        carrier = barden5(parse_group("Z_3^2"))
        partner = lemma1_transform(lens(5), 2)
        plan = Plan(initial_disc_state(n), (
            BubblingOp(OpKind.TRIVIAL_M, Bouquet.of(carrier)),
            BubblingOp(OpKind.TRIVIAL_M, Bouquet.of(partner)),
        ))
        t = realized_family(plan)
        assert [str(g) for g in t.groups] == ["0", "0", "Z", "Z", "Z_3^2 + Z_5", "Z_5", "0", "Z^2"]
        h = parse_group("Z_3^2")
        assert not set(h.factors()) & set(partner[1].factors())  # factor-disjoint torsion
        verdict = check_thm6(t, SubgroupFamily(((h, frozenset({n - 3})),)))
        assert verdict.status is Status.CONSISTENT, verdict
        assert overall_status(necessary_conditions(t)) is Status.CONSISTENT
        r.detail = f"target {t}"


# pytest entry points -------------------------------------------------------------


def test_round_fold_homology(capsys):
    accept_round_fold_homology(capsys)


def test_bubbling_engine_invariants(capsys):
    accept_bubbling_engine_invariants(capsys)


def test_oracle_matches_catalog(capsys):
    accept_oracle_matches_catalog(capsys)


def test_smith_normal_form_properties(capsys):
    accept_smith_normal_form_properties(capsys)


def test_planner_round_trip(capsys):
    accept_planner_round_trip(capsys)


def test_checker_planner_consistency(capsys):
    accept_checker_planner_consistency(capsys)


def test_lemma1_torsion_degrees(capsys):
    accept_lemma1_torsion_degrees(capsys)


def test_subgroup_counts(capsys):
    accept_subgroup_counts(capsys)


def test_isolated_subgroup_fixture(capsys):
    accept_isolated_subgroup_fixture(capsys)


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("accept_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
