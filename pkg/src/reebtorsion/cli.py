"""Command line entry point: ``reebtorsion <subcommand> ...``.

Exit codes: 0 success or Consistent, 1 usage/parse error,
2 Infeasible/HypothesisNotMet/Exhausted, 3 Unverifiable only.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from . import serialize as io
from .bubbling import InvalidOperation, apply_plan, delta_family, infer_source_homology
from .chain import homology, homology_of_complex, parse_builtin
from .checks import Status, check_thm5, check_thm6, necessary_conditions, overall_status
from .groups import DEFAULT_ORDER_BOUND, FGAbelianGroup, PresentationMatrix, canonicalize
from .manifolds import (
    ManifoldProfile,
    ProfileError,
    catalog_builtin,
    profile_violations,
)
from .planner import HypothesisNotMet, plan_prop3, plan_prop4, plan_search, plan_thm2, plan_thm4, prop5_truncate
from .snf import smith_normal_form

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_UNVERIFIABLE = 0, 1, 2, 3

_STATUS_EXIT = {
    Status.CONSISTENT: EXIT_OK,
    Status.INFEASIBLE: EXIT_FAIL,
    Status.HYPOTHESIS_NOT_MET: EXIT_FAIL,
    Status.UNVERIFIABLE: EXIT_UNVERIFIABLE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(f"{self.prog}: {message}")


def _catalog(path: str | None) -> list[ManifoldProfile]:
    return _load(path or str(io.bundled("default_catalog.json")), io.catalog_from_json)


def _load(path: str, decoder, *args):
    doc = io.load_json(path)
    try:
        return decoder(doc, *args)
    except io.SchemaError as exc:
        raise io.SchemaError(exc.pointer, exc.message, path, exc.line) from None


def _find_profile(name: str, catalog: Sequence[ManifoldProfile]) -> ManifoldProfile:
    return io.resolve_part(name, catalog, "--carrier")


# subcommands ------------------------------------------------------------------


def cmd_canon(args) -> tuple[Any, int]:
    rows = _load(args.matrix, io.matrix_from_json)
    gens = args.generators if args.generators is not None else len(rows)
    return io.group_to_json(canonicalize(PresentationMatrix(gens, tuple(map(tuple, rows))))), EXIT_OK


def cmd_snf(args) -> tuple[Any, int]:
    if args.matrix:
        m = _load(args.matrix, io.matrix_from_json)
    elif args.random:
        try:
            r, c = (int(x) for x in args.random.lower().split("x"))
        except ValueError:
            raise UsageError("--random expects ROWSxCOLS") from None
        rng = random.Random(args.seed)
        m = [[rng.randint(-args.bound, args.bound) for _ in range(c)] for _ in range(r)]
    else:
        raise UsageError("snf needs --matrix FILE or --random RxC")
    u, d, v = smith_normal_form(m)
    return {"M": m, "U": u, "D": d, "V": v}, EXIT_OK


def cmd_check(args) -> tuple[Any, int]:
    target = _load(args.target, io.target_from_json)
    verdicts = necessary_conditions(target)
    if args.thm5:
        verdicts.append(check_thm5(target, _load(args.thm5, io.partition_from_json)))
    if args.thm6:
        family, bound = _load(args.thm6, io.subgroup_family_from_json)
        verdicts.append(check_thm6(target, family, args.order_bound or bound or DEFAULT_ORDER_BOUND))
    status = overall_status(verdicts)
    doc = {"status": status.value, "verdicts": [io.verdict_to_json(v) for v in verdicts]}
    return doc, _STATUS_EXIT[status]


def cmd_plan(args) -> tuple[Any, int]:
    catalog = _catalog(args.catalog)
    target = _load(args.target, io.target_from_json)
    carriers = [_find_profile(name, catalog) for name in args.carrier or []]
    try:
        if args.strategy == "prop3":
            plan = plan_prop3(target)
        elif args.strategy == "prop4":
            plan = plan_prop4(target)
        elif args.strategy == "thm2":
            if len(carriers) != 1:
                raise UsageError("thm2 needs exactly one --carrier")
            plan = plan_thm2(target, carriers[0])
        elif args.strategy == "thm4":
            if len(carriers) != 2 or not args.case:
                raise UsageError("thm4 needs two --carrier options and --case")
            plan = plan_thm4(target, carriers[0], carriers[1], args.case)
        else:
            plan = plan_search(target, catalog, args.max_carriers)
            if plan is None:
                return {
                    "status": "Exhausted",
                    "witness": f"no plan with at most {args.max_carriers} carriers from the catalog",
                }, EXIT_FAIL
    except HypothesisNotMet as exc:
        return io.verdict_to_json(exc.verdict), EXIT_FAIL
    if args.truncate is not None:
        try:
            plan = prop5_truncate(plan, FGAbelianGroup(args.truncate))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return io.plan_to_json(plan, catalog), EXIT_OK


def cmd_bubble(args) -> tuple[Any, int]:
    catalog = _catalog(args.catalog)
    plan = _load(args.plan, io.plan_from_json, catalog)
    try:
        final, ledger = apply_plan(plan)
    except InvalidOperation as exc:
        return {"status": "InvalidOperation", "index": exc.index, "witness": str(exc)}, EXIT_FAIL
    family = delta_family(plan.initial, final)
    doc = {
        "final": io.state_to_json(final),
        "delta": io.target_to_json(family) if family is not None else None,
        "delta_issues": family.issues() if family is not None else ["incomparable states"],
        "ledger": io.ledger_to_json(ledger),
    }
    return doc, EXIT_OK


def cmd_oracle(args) -> tuple[Any, int]:
    if bool(args.builtin) == bool(args.complex):
        raise UsageError("oracle needs exactly one of --builtin or --complex")
    if args.builtin:
        try:
            c = parse_builtin(args.builtin)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        c = _load(args.complex, io.complex_from_json)
    if args.degree is not None:
        try:
            return io.group_to_json(homology_of_complex(c, args.degree)), EXIT_OK
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return [io.group_to_json(g) for g in homology(c)], EXIT_OK


def cmd_catalog(args) -> tuple[Any, int]:
    if args.action == "list":
        return io.catalog_to_json(_catalog(args.catalog)), EXIT_OK
    if args.action == "validate":
        entries = _catalog(args.file or args.catalog)
        report = [
            {"name": p.name, "violations": [str(v) for v in profile_violations(p)]}
            for p in entries
        ]
        ok = all(not r["violations"] for r in report)
        return {"valid": ok, "profiles": report}, EXIT_OK if ok else EXIT_FAIL
    # add
    if not args.catalog:
        raise UsageError("catalog add needs --catalog FILE to write to")
    path = Path(args.catalog)
    entries = _load(str(path), io.catalog_from_json) if path.exists() else []
    if args.builtin:
        try:
            new = catalog_builtin(args.builtin)
        except ProfileError as exc:
            return {"status": "Violation", "witness": str(exc)}, EXIT_FAIL
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.profile:
        new = _load(args.profile, io.profile_from_json)
    else:
        raise UsageError("catalog add needs --builtin SPEC or --profile FILE")
    problems = profile_violations(new)
    if problems:
        return {"status": "Violation", "witness": str(problems[0])}, EXIT_FAIL
    if any(p.name == new.name for p in entries):
        raise UsageError(f"catalog already has an entry named {new.name!r}")
    entries.append(new)
    path.write_text(io.dumps(io.catalog_to_json(entries)))
    return io.profile_to_json(new), EXIT_OK


def cmd_infer(args) -> tuple[Any, int]:
    if bool(args.state) == bool(args.plan):
        raise UsageError("infer needs exactly one of --state or --plan")
    if args.state:
        state = _load(args.state, io.state_from_json)
    else:
        state, _ = apply_plan(_load(args.plan, io.plan_from_json, _catalog(args.catalog)))
    try:
        report = infer_source_homology(state, args.m, args.special_generic)
    except ValueError as exc:
        return {"status": "HypothesisNotMet", "witness": str(exc)}, EXIT_FAIL
    return {
        "m": report.m,
        "n": report.n,
        "max_degree": report.bound,
        "homology": [io.group_to_json(g) for g in report.groups],
        "unverified_hypotheses": list(report.hypotheses),
    }, EXIT_OK


# output -------------------------------------------------------------------------


def _is_group(obj: Any) -> bool:
    return isinstance(obj, dict) and set(obj) == {"rank", "torsion"}


def _table_lines(obj: Any, prefix: str = "") -> list[str]:
    if _is_group(obj):
        return [f"{prefix}\t{io.group_from_json(obj)}"]
    if isinstance(obj, dict):
        return [line for k in sorted(obj) for line in _table_lines(obj[k], f"{prefix}.{k}" if prefix else k)]
    if isinstance(obj, list):
        if obj and all(_is_group(g) for g in obj):
            return [f"{prefix}\t(" + ", ".join(str(io.group_from_json(g)) for g in obj) + ")"]
        if obj and all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in obj):
            return [f"{prefix}\t{' '.join(map(str, row))}" for row in obj]
        return [line for i, v in enumerate(obj) for line in _table_lines(v, f"{prefix}[{i}]")]
    return [f"{prefix}\t{obj}"]


def render(doc: Any, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table_lines(doc)) + "\n"
    return io.dumps(doc)


def build_parser() -> argparse.ArgumentParser:
    def shared(default) -> argparse.ArgumentParser:
        p = _Parser(add_help=False)
        p.add_argument("--format", choices=("json", "table"), default=default("json"))
        p.add_argument("--output", "-o", default=default(None), help="write the document here instead of stdout")
        p.add_argument("--seed", type=int, default=default(None))
        return p

    # options may go before or after the subcommand; the subcommand copy must
    # not overwrite a value given before it
    common = shared(lambda _: argparse.SUPPRESS)
    parser = _Parser(prog="reebtorsion", description=__doc__.splitlines()[0], parents=[shared(lambda v: v)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("canon", parents=[common], help="canonical form of a presented group")
    p.add_argument("--matrix", required=True, help="relation matrix JSON (rows = generators)")
    p.add_argument("--generators", type=int, help="generator count when the matrix has no columns")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form with transforms")
    p.add_argument("--matrix")
    p.add_argument("--random", metavar="RxC")
    p.add_argument("--bound", type=int, default=100)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("check", parents=[common], help="necessary conditions on a target family")
    p.add_argument("--target", required=True)
    p.add_argument("--thm5", metavar="FILE", help="prime-power partition JSON")
    p.add_argument("--thm6", metavar="FILE", help="subgroup family JSON")
    p.add_argument("--order-bound", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("plan", parents=[common], help="build a bubbling plan for a target")
    p.add_argument("--target", required=True)
    p.add_argument("--strategy", required=True, choices=("prop3", "prop4", "thm2", "thm4", "search"))
    p.add_argument("--catalog")
    p.add_argument("--carrier", action="append", help="carrier name or builtin spec (repeatable)")
    p.add_argument("--case", choices=("1a", "1b", "2", "3"))
    p.add_argument("--max-carriers", type=int, default=3)
    p.add_argument("--truncate", type=int, metavar="RANK", help="regroup into RANK operations")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("bubble", parents=[common], help="replay a plan")
    p.add_argument("--plan", required=True)
    p.add_argument("--catalog")
    p.set_defaults(func=cmd_bubble)

    p = sub.add_parser("oracle", parents=[common], help="homology of a chain complex")
    p.add_argument("--builtin", help="point, sphere:D or lens:P")
    p.add_argument("--complex", help="complex JSON file")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("catalog", parents=[common], help="list, validate or extend a catalog")
    p.add_argument("action", choices=("list", "validate", "add"))
    p.add_argument("file", nargs="?", help="catalog to validate")
    p.add_argument("--catalog")
    p.add_argument("--profile", help="profile JSON to add")
    p.add_argument("--builtin")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("infer", parents=[common], help="source-manifold homology from a Reeb space")
    p.add_argument("--state")
    p.add_argument("--plan")
    p.add_argument("--catalog")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--special-generic", action="store_true")
    p.set_defaults(func=cmd_infer)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, code = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except io.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(doc, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
