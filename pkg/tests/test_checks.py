from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reebtorsion.bubbling import TargetFamily
from reebtorsion.checks import (
    PrimePowerPartition,
    Status,
    SubgroupFamily,
    check_thm5,
    check_thm6,
    degrees_carrying,
    necessary_conditions,
    overall_status,
)
from reebtorsion.groups import cyclic, parse_group

from conftest import fg_groups


def target(n: int, *groups: str) -> TargetFamily:
    return TargetFamily(n, tuple(parse_group(g) for g in groups))


def failures(t: TargetFamily) -> set[str]:
    return {v.rule for v in necessary_conditions(t) if v.status is Status.INFEASIBLE}


def test_single_torsion_fixture_is_consistent():
    t = target(5, "0", "0", "Z", "Z_7", "0", "Z")
    assert overall_status(necessary_conditions(t)) is Status.CONSISTENT


def test_single_torsion_needs_rank_at_shifted_degree():
    verdicts = necessary_conditions(target(5, "0", "0", "0", "Z_7", "0", "Z"))
    bad = [v for v in verdicts if v.status is Status.INFEASIBLE]
    assert [v.rule for v in bad] == ["single-torsion"]
    assert "rank G_2 = 0" in bad[0].witness


def test_single_torsion_too_low():
    verdicts = necessary_conditions(target(5, "0", "Z_3", "Z", "0", "0", "Z"))
    assert any("2j-n+1 = -2 <= 0" in v.witness for v in verdicts if v.status is Status.INFEASIBLE)


def test_codim_one_torsion():
    t = target(5, "0", "0", "Z", "0", "Z_2", "Z")
    assert "codim-one-free" in failures(t)
    assert overall_status(necessary_conditions(t)) is Status.INFEASIBLE


def test_structural_rules():
    assert {"g0-trivial", "gn-nontrivial"} <= failures(target(2, "Z", "0", "0"))
    assert "top-degree-free" in failures(target(3, "0", "0", "0", "Z + Z_2"))


def test_two_torsion_fixture_is_consistent():
    t = target(5, "0", "Z", "Z + Z_5", "Z_5 + Z_25", "0", "Z")
    assert failures(t) == set()


def test_two_torsion_needs_self_dual_carrier_room():
    # T G_2 = Z_3 is not a summand of T G_3 = Z_5, and 2n-2*2-1 = 5 is not < n = 5
    t = target(5, "0", "Z", "Z + Z_3", "Z_5", "0", "Z")
    assert "two-torsion" in failures(t)


def test_two_torsion_needs_two_positive_degrees():
    t = target(7, "0", "0", "0", "Z", "Z_3", "Z_5", "0", "Z")
    witnesses = [v.witness for v in necessary_conditions(t) if v.rule == "two-torsion"]
    assert any("need at least 2" in w for w in witnesses)


def test_three_torsion_asymmetric_needs_two_positive_degrees():
    t = TargetFamily(9, tuple(parse_group(g) for g in ["0", "0", "0", "Z_2", "Z", "Z_2", "0", "0", "Z_3", "Z"]))
    assert "three-torsion" in failures(t)
    symmetric = target(9, "0", "0", "0", "Z_2", "Z", "Z_3", "0", "Z_2", "0", "Z")
    assert "three-torsion" not in failures(symmetric)


@given(st.integers(2, 7), st.data())
def test_torsion_in_top_two_degrees_is_always_infeasible(n, data):
    groups = [parse_group("0")] + [data.draw(fg_groups()) for _ in range(1, n)] + [data.draw(fg_groups(max_rank=2))]
    groups[-1] = groups[-1] + parse_group("Z")
    where = data.draw(st.sampled_from([n - 1, n]))
    groups[where] = groups[where] + cyclic(data.draw(st.sampled_from([2, 3, 4])))
    assert overall_status(necessary_conditions(TargetFamily(n, tuple(groups)))) is Status.INFEASIBLE


def test_overall_status_priority():
    from reebtorsion.checks import Verdict

    v = lambda s: Verdict(s, "r", "")  # noqa: E731
    assert overall_status([]) is Status.CONSISTENT
    assert overall_status([v(Status.UNVERIFIABLE), v(Status.CONSISTENT)]) is Status.UNVERIFIABLE
    assert overall_status([v(Status.UNVERIFIABLE), v(Status.HYPOTHESIS_NOT_MET)]) is Status.HYPOTHESIS_NOT_MET
    assert overall_status([v(Status.HYPOTHESIS_NOT_MET), v(Status.INFEASIBLE)]) is Status.INFEASIBLE


# prime-power windows -----------------------------------------------------------


def test_partition_validation():
    with pytest.raises(ValueError):
        PrimePowerPartition(({6},))
    with pytest.raises(ValueError):
        PrimePowerPartition(({2}, {2, 3}))
    with pytest.raises(ValueError):
        PrimePowerPartition(())


def test_window_without_rank_is_infeasible():
    t = target(7, "0", "0", "0", "0", "Z_2", "0", "0", "Z")
    v = check_thm5(t, PrimePowerPartition(({2},)))
    assert v.status is Status.INFEASIBLE and "[2, 2]" in v.witness


def test_window_with_rank_is_consistent():
    t = target(7, "0", "0", "Z", "0", "Z_2", "0", "0", "Z")
    assert check_thm5(t, PrimePowerPartition(({2},))).status is Status.CONSISTENT


def test_window_hypotheses():
    t = target(7, "0", "0", "Z", "0", "Z_2", "0", "0", "Z")
    assert check_thm5(t, PrimePowerPartition(({3},))).status is Status.HYPOTHESIS_NOT_MET
    t2 = target(7, "0", "Z", "Z", "Z_3", "Z_2", "0", "0", "Z")
    assert check_thm5(t2, PrimePowerPartition(({2}, {3}))).status is Status.HYPOTHESIS_NOT_MET
    assert degrees_carrying(t2, [2, 4]) == [4]


def test_windows_need_k_positive_degrees():
    t = target(7, "0", "0", "Z", "0", "Z_2", "Z_3", "0", "Z")
    v = check_thm5(t, PrimePowerPartition(({2}, {3})))
    assert v.status is Status.INFEASIBLE


# isolated subgroups ------------------------------------------------------------

ISOLATED = target(7, "0", "0", "Z", "Z", "Z_3^2 + Z_5", "Z_5", "0", "Z^2")


def family(*pairs) -> SubgroupFamily:
    return SubgroupFamily(tuple((parse_group(h), frozenset(a)) for h, a in pairs))


def test_isolated_subgroup_fixture_is_consistent():
    assert check_thm6(ISOLATED, family(("Z_3^2", {4}))).status is Status.CONSISTENT


def test_isolated_subgroup_without_rank_is_infeasible():
    t = target(7, "0", "0", "0", "Z", "Z_3^2 + Z_5", "Z_5", "0", "Z^2")
    v = check_thm6(t, family(("Z_3^2", {4})))
    assert v.status is Status.INFEASIBLE and "2j-n+1" in v.witness


def test_isolated_subgroup_hypotheses():
    assert check_thm6(ISOLATED, family(("Z_3^2", {4, 5}))).status is Status.HYPOTHESIS_NOT_MET
    assert check_thm6(ISOLATED, family(("Z_5", {4, 5}))).status is Status.HYPOTHESIS_NOT_MET  # even
    t = target(7, "0", "0", "Z", "Z", "Z_3^2 + Z_3", "0", "0", "Z")
    v = check_thm6(t, family(("Z_3^2", {4})))
    assert v.status is Status.HYPOTHESIS_NOT_MET
    assert check_thm6(ISOLATED, family(("Z_3^2", {4}), ("Z_3^2", {5}))).status is Status.HYPOTHESIS_NOT_MET
    assert check_thm6(ISOLATED, family(("Z_3^2", {4}), ("Z_5", {4}))).status is Status.HYPOTHESIS_NOT_MET


def test_isolated_subgroup_above_bound_is_unverifiable():
    v = check_thm6(ISOLATED, family(("Z_3^2", {4})), order_bound=10)
    assert v.status is Status.UNVERIFIABLE


def test_family_validation():
    with pytest.raises(ValueError):
        family(("Z", {1}))
    with pytest.raises(ValueError):
        family(("Z_2", set()))
    with pytest.raises(ValueError):
        SubgroupFamily(())
