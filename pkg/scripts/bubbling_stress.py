"""Random bubbling plans against the engine's invariants.

For every random operation the added homology must have exactly one Z in
degree n and no torsion in degree n - 1, and regrouping a plan must leave
degrees below n unchanged.
"""

from __future__ import annotations

import argparse
import random
import sys

from reebtorsion.bubbling import BubblingOp, OpKind, Plan, apply_plan, initial_disc_state, realized_family, regroup
from reebtorsion.groups import Z, FGAbelianGroup
from reebtorsion.manifolds import Bouquet, default_catalog


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plans", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--max-ops", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    catalog = default_catalog()
    ops_seen = violations = 0
    for _ in range(args.plans):
        n = rng.randint(1, args.max_n)
        pool = [p for p in catalog if p.dim < n and (p.embeds_in is None or p.embeds_in <= n)]
        ops = tuple(
            BubblingOp(rng.choice(list(OpKind)), Bouquet(tuple(rng.choice(pool) for _ in range(rng.randint(0, 4))) if pool else ()))
            for _ in range(rng.randint(1, args.max_ops))
        )
        plan = Plan(initial_disc_state(n), ops)
        _, ledger = apply_plan(plan)
        for entry in ledger:
            ops_seen += 1
            if entry.delta[n] != Z or not entry.delta[n - 1].is_free:
                violations += 1
                print(f"violation: n={n} op {entry.index} parts {entry.parts}")
        k = rng.randint(1, len(ops))
        merged = realized_family(Plan(plan.initial, regroup(ops, k)))
        full = realized_family(plan)
        if merged.groups[:-1] != full.groups[:-1] or merged.groups[-1] != FGAbelianGroup.free(k):
            violations += 1
            print(f"regroup changed lower degrees: n={n}, k={k}")
    print(f"{args.plans} plans, {ops_seen} operations, {violations} violations")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
