"""Exhaustive sweep: check every small target and try to plan it.

Reports how many targets are flagged Infeasible, how many the search
realizes, and any target that is both (a conflict). Exits 1 on conflicts.

    python scripts/enumerate_small_targets.py --max-n 4 --max-rank 2 --torsion 2 3 4
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter
from itertools import product

from reebtorsion import serialize as io
from reebtorsion.bubbling import TargetFamily, realized_family
from reebtorsion.checks import Status, necessary_conditions, overall_status
from reebtorsion.groups import TRIVIAL, FGAbelianGroup, cyclic
from reebtorsion.manifolds import default_catalog
from reebtorsion.planner import plan_search

log = logging.getLogger("sweep")


def targets(max_n: int, max_rank: int, orders: list[int]):
    choices = [FGAbelianGroup.free(r) + t for r in range(max_rank + 1) for t in [TRIVIAL] + [cyclic(q) for q in orders]]
    for n in range(1, max_n + 1):
        for middle in product(choices, repeat=n - 1):
            for top in choices:
                if not top.is_trivial:
                    yield TargetFamily(n, (TRIVIAL,) + middle + (top,))


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-rank", type=int, default=1)
    ap.add_argument("--torsion", type=int, nargs="*", default=[2, 3], help="cyclic orders to draw torsion from")
    ap.add_argument("--max-carriers", type=int, default=3)
    ap.add_argument("--skip-infeasible", action="store_true", help="do not run the search on Infeasible targets")
    ap.add_argument("--json", action="store_true", help="print the summary as JSON")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)

    catalog = default_catalog()
    tally: Counter = Counter()
    conflicts = []
    start = time.perf_counter()
    for t in targets(args.max_n, args.max_rank, args.torsion):
        tally["targets"] += 1
        status = overall_status(necessary_conditions(t))
        tally[status.value] += 1
        if status is Status.INFEASIBLE and args.skip_infeasible:
            continue
        plan = plan_search(t, catalog, args.max_carriers)
        if plan is None:
            continue
        tally["planned"] += 1
        assert realized_family(plan) == t
        if status is Status.INFEASIBLE:
            conflicts.append(io.target_to_json(t))
        if tally["targets"] % 20000 == 0:
            log.info("%d targets, %.1fs", tally["targets"], time.perf_counter() - start)
    summary = dict(tally, conflicts=len(conflicts), seconds=round(time.perf_counter() - start, 2))
    if args.json:
        print(io.dumps({"summary": summary, "conflicts": conflicts}), end="")
    else:
        for key, value in summary.items():
            print(f"{key:>16}: {value}")
        for c in conflicts[:10]:
            print("conflict:", json.dumps(c))
    return 1 if conflicts else 0


if __name__ == "__main__":
    sys.exit(main())
