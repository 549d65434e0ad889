"""JSON forms for groups, complexes, profiles, states, targets and plans.

Decoders take a JSON-pointer ``path`` so schema errors can say exactly
where a document went wrong.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from .bubbling import BubblingOp, LedgerEntry, OpKind, Plan, ReebState, TargetFamily, initial_disc_state
from .chain import ChainComplex
from .checks import PrimePowerPartition, SubgroupFamily, Verdict
from .groups import FGAbelianGroup, TorsionFactor, parse_group
from .manifolds import Bouquet, ManifoldProfile, catalog_builtin


class SchemaError(ValueError):
    def __init__(self, pointer: str, message: str, source: str | None = None, line: int | None = None):
        self.pointer = pointer or "/"
        self.message = message
        self.source = source
        self.line = line
        where = f"{source}: " if source else ""
        where += f"line {line}: " if line is not None else f"{self.pointer}: "
        super().__init__(f"{where}{message}")


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package, e.g. ``fixtures/x.json``."""
    return Path(str(resources.files("reebtorsion") / "data" / name))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc.msg} (column {exc.colno})", str(path), exc.lineno) from None


def _expect(obj: Any, kind: type | tuple, path: str) -> Any:
    if isinstance(obj, bool) or not isinstance(obj, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(path, f"expected {name}, got {type(obj).__name__}")
    return obj


def _field(obj: Mapping, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(path, f"missing key {key!r}")
    return obj[key]


def _keys(obj: Mapping, allowed: set[str], path: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(path, f"unknown keys {sorted(extra)}")


# groups and matrices ------------------------------------------------------


def group_to_json(g: FGAbelianGroup) -> dict:
    return {"rank": g.rank, "torsion": [{"p": t.p, "e": t.e, "m": t.m} for t in g.torsion]}


def group_from_json(obj: Any, path: str = "") -> FGAbelianGroup:
    """Accepts the object form or the string notation ``"Z^2 + Z_4"``."""
    if isinstance(obj, str):
        try:
            return parse_group(obj)
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None
    _expect(obj, dict, path)
    _keys(obj, {"rank", "torsion"}, path)
    rank = _expect(obj.get("rank", 0), int, f"{path}/rank")
    records = _expect(obj.get("torsion", []), list, f"{path}/torsion")
    torsion = []
    for i, rec in enumerate(records):
        rp = f"{path}/torsion/{i}"
        _expect(rec, dict, rp)
        _keys(rec, {"p", "e", "m"}, rp)
        torsion.append(TorsionFactor(*(_expect(_field(rec, k, rp), int, f"{rp}/{k}") for k in "pem")))
    try:
        return FGAbelianGroup(rank, tuple(torsion))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def groups_from_json(obj: Any, path: str) -> list[FGAbelianGroup]:
    return [group_from_json(g, f"{path}/{i}") for i, g in enumerate(_expect(obj, list, path))]


def matrix_from_json(obj: Any, path: str = "") -> list[list[int]]:
    rows = _expect(obj, list, path)
    out = []
    for i, row in enumerate(rows):
        _expect(row, list, f"{path}/{i}")
        out.append([_expect(x, int, f"{path}/{i}/{j}") for j, x in enumerate(row)])
    if len({len(r) for r in out}) > 1:
        raise SchemaError(path, "ragged matrix")
    return out


# chain complexes -----------------------------------------------------------


def complex_to_json(c: ChainComplex) -> dict:
    return {"dims": list(c.dims), "boundaries": [[list(r) for r in b] for b in c.boundaries]}


def complex_from_json(obj: Any, path: str = "") -> ChainComplex:
    _expect(obj, dict, path)
    _keys(obj, {"dims", "boundaries"}, path)
    dims = [_expect(d, int, f"{path}/dims/{i}") for i, d in enumerate(_expect(_field(obj, "dims", path), list, f"{path}/dims"))]
    blocks = _expect(obj.get("boundaries", []), list, f"{path}/boundaries")
    mats = [matrix_from_json(b, f"{path}/boundaries/{i}") for i, b in enumerate(blocks)]
    try:
        return ChainComplex(tuple(dims), tuple(tuple(tuple(r) for r in m) for m in mats))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


# profiles and catalogs -----------------------------------------------------


def profile_to_json(p: ManifoldProfile) -> dict:
    doc = {"name": p.name, "dim": p.dim, "homology": [group_to_json(g) for g in p.homology]}
    if p.embeds_in is not None:
        doc["embeds_in"] = p.embeds_in
    return doc


def profile_from_json(obj: Any, path: str = "") -> ManifoldProfile:
    _expect(obj, dict, path)
    _keys(obj, {"name", "dim", "homology", "embeds_in"}, path)
    name = _expect(_field(obj, "name", path), str, f"{path}/name")
    dim = _expect(_field(obj, "dim", path), int, f"{path}/dim")
    homology = groups_from_json(_field(obj, "homology", path), f"{path}/homology")
    embeds = obj.get("embeds_in")
    if embeds is not None:
        _expect(embeds, int, f"{path}/embeds_in")
    try:
        return ManifoldProfile(name, dim, tuple(homology), embeds_in=embeds)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def catalog_to_json(entries: Sequence[ManifoldProfile]) -> list:
    return [profile_to_json(p) for p in entries]


def catalog_from_json(obj: Any, path: str = "") -> list[ManifoldProfile]:
    return [profile_from_json(p, f"{path}/{i}") for i, p in enumerate(_expect(obj, list, path))]


def resolve_part(obj: Any, catalog: Sequence[ManifoldProfile], path: str = "") -> ManifoldProfile:
    """A bouquet part: catalog name, builtin spec (``lens:5``) or inline profile."""
    if isinstance(obj, str):
        for p in catalog:
            if p.name == obj:
                return p
        try:
            return catalog_builtin(obj)
        except ValueError:
            raise SchemaError(path, f"unknown manifold {obj!r}") from None
    return profile_from_json(obj, path)


# states, targets, plans ------------------------------------------------------


def state_to_json(s: ReebState) -> dict:
    return {"n": s.n, "homology": [group_to_json(g) for g in s.homology]}


def state_from_json(obj: Any, path: str = "") -> ReebState:
    _expect(obj, dict, path)
    _keys(obj, {"n", "homology"}, path)
    n = _expect(_field(obj, "n", path), int, f"{path}/n")
    groups = groups_from_json(_field(obj, "homology", path), f"{path}/homology")
    try:
        return ReebState(n, tuple(groups))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def target_to_json(t: TargetFamily) -> dict:
    return {"n": t.n, "groups": [group_to_json(g) for g in t.groups]}


def target_from_json(obj: Any, path: str = "") -> TargetFamily:
    _expect(obj, dict, path)
    _keys(obj, {"n", "groups"}, path)
    n = _expect(_field(obj, "n", path), int, f"{path}/n")
    groups = groups_from_json(_field(obj, "groups", path), f"{path}/groups")
    try:
        return TargetFamily(n, tuple(groups))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _part_to_json(p: ManifoldProfile, catalog: Sequence[ManifoldProfile]) -> Any:
    for q in catalog:
        if q.name == p.name and q.same_homology(p):
            return p.name
    return profile_to_json(p)


def plan_to_json(plan: Plan, catalog: Sequence[ManifoldProfile] = ()) -> dict:
    disc = initial_disc_state(plan.n)
    doc = {
        "n": plan.n,
        "initial": "disc" if plan.initial == disc else state_to_json(plan.initial),
        "ops": [
            {
                "kind": op.kind.value,
                "bouquet": "point" if op.polyhedron.is_point else [_part_to_json(p, catalog) for p in op.polyhedron.parts],
            }
            for op in plan.ops
        ],
    }
    if plan.provenance:
        doc["provenance"] = plan.provenance
    return doc


def plan_from_json(obj: Any, catalog: Sequence[ManifoldProfile] = (), path: str = "") -> Plan:
    _expect(obj, dict, path)
    _keys(obj, {"n", "initial", "ops", "provenance"}, path)
    n = _expect(_field(obj, "n", path), int, f"{path}/n")
    init = obj.get("initial", "disc")
    if init == "disc":
        initial = initial_disc_state(n)
    else:
        initial = state_from_json(init, f"{path}/initial")
        if initial.n != n:
            raise SchemaError(f"{path}/initial", f"state has n = {initial.n}, plan has n = {n}")
    ops = []
    for i, raw in enumerate(_expect(_field(obj, "ops", path), list, f"{path}/ops")):
        op_path = f"{path}/ops/{i}"
        _expect(raw, dict, op_path)
        _keys(raw, {"kind", "bouquet"}, op_path)
        kind = _field(raw, "kind", op_path)
        try:
            kind = OpKind(kind)
        except ValueError:
            raise SchemaError(f"{op_path}/kind", f"unknown kind {kind!r}") from None
        bouquet = _field(raw, "bouquet", op_path)
        if bouquet == "point":
            poly = Bouquet.point()
        else:
            items = _expect(bouquet, list, f"{op_path}/bouquet")
            if not items:
                raise SchemaError(f"{op_path}/bouquet", "empty bouquet; use \"point\"")
            poly = Bouquet(tuple(resolve_part(p, catalog, f"{op_path}/bouquet/{j}") for j, p in enumerate(items)))
        ops.append(BubblingOp(kind, poly))
    provenance = obj.get("provenance", "")
    return Plan(initial, tuple(ops), _expect(provenance, str, f"{path}/provenance"))


def ledger_to_json(ledger: Sequence[LedgerEntry]) -> list:
    return [
        {"index": e.index, "kind": e.kind.value, "parts": list(e.parts), "delta": [group_to_json(g) for g in e.delta]}
        for e in ledger
    ]


def verdict_to_json(v: Verdict) -> dict:
    return {"status": v.status.value, "rule": v.rule, "witness": v.witness}


def partition_from_json(obj: Any, path: str = "") -> PrimePowerPartition:
    _expect(obj, dict, path)
    _keys(obj, {"sets"}, path)
    sets = []
    for i, s in enumerate(_expect(_field(obj, "sets", path), list, f"{path}/sets")):
        sets.append([_expect(q, int, f"{path}/sets/{i}/{j}") for j, q in enumerate(_expect(s, list, f"{path}/sets/{i}"))])
    try:
        return PrimePowerPartition(tuple(frozenset(s) for s in sets))
    except ValueError as exc:
        raise SchemaError(f"{path}/sets", str(exc)) from None


def subgroup_family_from_json(obj: Any, path: str = "") -> tuple[SubgroupFamily, int | None]:
    """``{"family": [{"H": group, "A": [degrees]}], "order_bound": 512}``."""
    _expect(obj, dict, path)
    _keys(obj, {"family", "order_bound"}, path)
    pairs = []
    for i, item in enumerate(_expect(_field(obj, "family", path), list, f"{path}/family")):
        ip = f"{path}/family/{i}"
        _expect(item, dict, ip)
        _keys(item, {"H", "A"}, ip)
        h = group_from_json(_field(item, "H", ip), f"{ip}/H")
        a = [_expect(j, int, f"{ip}/A/{k}") for k, j in enumerate(_expect(_field(item, "A", ip), list, f"{ip}/A"))]
        pairs.append((h, frozenset(a)))
    bound = obj.get("order_bound")
    if bound is not None:
        _expect(bound, int, f"{path}/order_bound")
    try:
        return SubgroupFamily(tuple(pairs)), bound
    except ValueError as exc:
        raise SchemaError(f"{path}/family", str(exc)) from None
