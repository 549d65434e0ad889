from __future__ import annotations

import hypothesis
from hypothesis import strategies as st

from reebtorsion.bubbling import TargetFamily
from reebtorsion.groups import FGAbelianGroup, TRIVIAL

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=600, deadline=None)
hypothesis.settings.load_profile("default")

SMALL_PRIMES = (2, 3, 5, 7)


@st.composite
def finite_groups(draw, max_factors: int = 3, max_exp: int = 2) -> FGAbelianGroup:
    divisors = draw(st.lists(
        st.builds(lambda p, e: p**e, st.sampled_from(SMALL_PRIMES), st.integers(1, max_exp)),
        max_size=max_factors,
    ))
    return FGAbelianGroup.from_divisors(*divisors) if divisors else TRIVIAL


@st.composite
def fg_groups(draw, max_rank: int = 3) -> FGAbelianGroup:
    return FGAbelianGroup.free(draw(st.integers(0, max_rank))) + draw(finite_groups())


@st.composite
def free_targets(draw, max_n: int = 7, max_rank: int = 5) -> TargetFamily:
    n = draw(st.integers(1, max_n))
    ranks = [0] + [draw(st.integers(0, max_rank)) for _ in range(1, n)] + [draw(st.integers(1, max_rank))]
    return TargetFamily(n, tuple(FGAbelianGroup.free(r) for r in ranks))


def int_matrices(max_rows: int = 6, max_cols: int = 6, bound: int = 100):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda m, c=c: (m, c))
        )
    )
