"""Homology profiles of closed, connected, orientable manifolds.

A profile is the only identity a manifold has here: two manifolds with
equal graded homology are interchangeable as bubbling constituents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groups import TRIVIAL, Z, FGAbelianGroup, cyclic, direct_sum, parse_group


@dataclass(frozen=True)
class ManifoldProfile:
    name: str
    dim: int
    homology: tuple[FGAbelianGroup, ...]
    embeds_in: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "homology", tuple(self.homology))
        if self.dim < 0:
            raise ValueError("negative dimension")
        if len(self.homology) != self.dim + 1:
            raise ValueError(f"{self.name}: need {self.dim + 1} homology groups, got {len(self.homology)}")

    def __getitem__(self, k: int) -> FGAbelianGroup:
        return self.homology[k] if 0 <= k <= self.dim else TRIVIAL

    @property
    def middle(self) -> dict[int, FGAbelianGroup]:
        """Non-trivial groups strictly between degree 0 and the top."""
        return {k: g for k, g in enumerate(self.homology) if 0 < k < self.dim and not g.is_trivial}

    @property
    def has_torsion(self) -> bool:
        return any(not g.is_free for g in self.homology)

    def same_homology(self, other: ManifoldProfile) -> bool:
        return self.dim == other.dim and self.homology == other.homology


@dataclass(frozen=True)
class Violation:
    degree: int
    law: str
    detail: str

    def __str__(self) -> str:
        return f"degree {self.degree}: {self.law}: {self.detail}"


class ProfileError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


def profile_violations(p: ManifoldProfile) -> list[Violation]:
    out = []
    d = p.dim
    if p[0] != Z:
        out.append(Violation(0, "connected", f"H_0 = {p[0]}, expected Z"))
    if p[d] != Z:
        out.append(Violation(d, "closed orientable", f"H_{d} = {p[d]}, expected Z"))
    for k in range(d, -1, -1):
        if p[k].rank != p[d - k].rank:
            out.append(Violation(k, "rank duality", f"rank H_{k} = {p[k].rank} but rank H_{d - k} = {p[d - k].rank}"))
    for k in range(d - 1, -1, -1):
        a, b = p[k].torsion_part, p[d - k - 1].torsion_part
        if a != b:
            out.append(Violation(k, "torsion duality", f"T H_{k} = {a} but T H_{d - k - 1} = {b}"))
    return out


def validate_profile(p: ManifoldProfile) -> Violation | None:
    """First duality violation, or ``None`` for a valid profile.

    Torsion checks run from the top degree down, so a stray torsion class
    is reported at the degree where it sits rather than at its partner.
    """
    found = profile_violations(p)
    return found[0] if found else None


def _checked(p: ManifoldProfile) -> ManifoldProfile:
    v = validate_profile(p)
    if v is not None:
        raise ProfileError(v)
    return p


# catalog builders -------------------------------------------------------


def sphere(d: int) -> ManifoldProfile:
    if d < 1:
        raise ValueError("sphere dimension must be >= 1")
    return ManifoldProfile(f"S^{d}", d, (Z,) + (TRIVIAL,) * (d - 1) + (Z,), embeds_in=d + 1)


def lens(p: int) -> ManifoldProfile:
    if p < 2:
        raise ValueError("lens space needs p >= 2")
    return ManifoldProfile(f"L({p})", 3, (Z, cyclic(p), TRIVIAL, Z), embeds_in=5)


def barden5(t: FGAbelianGroup) -> ManifoldProfile:
    """Simply connected 5-manifold with ``T H_2 = t`` and ``H_2`` otherwise zero."""
    if not t.is_finite:
        raise ValueError("barden5 needs a finite group")
    return _checked(ManifoldProfile(f"Barden5({t})", 5, (Z, TRIVIAL, t, TRIVIAL, TRIVIAL, Z)))


def crowley7(t: FGAbelianGroup) -> ManifoldProfile:
    """2-connected 7-manifold with ``H_3 = t`` (e.g. an S^3-bundle over S^4)."""
    if not t.is_finite:
        raise ValueError("crowley7 needs a finite group")
    return _checked(ManifoldProfile(f"Crowley7({t})", 7, (Z, TRIVIAL, TRIVIAL, t) + (TRIVIAL,) * 3 + (Z,)))


def catalog_builtin(spec: str) -> ManifoldProfile:
    """Parse ``sphere:3``, ``lens:25``, ``barden5:Z_3+Z_3`` or ``crowley7:Z_5``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if not arg:
        raise ValueError(f"builtin {spec!r} needs an argument")
    if kind == "sphere":
        return sphere(int(arg))
    if kind == "lens":
        return lens(int(arg))
    if kind == "barden5":
        return barden5(parse_group(arg))
    if kind == "crowley7":
        return crowley7(parse_group(arg))
    raise ValueError(f"unknown builtin manifold {kind!r}")


def connected_sum_profile(p1: ManifoldProfile, p2: ManifoldProfile) -> ManifoldProfile:
    if p1.dim != p2.dim:
        raise ValueError(f"dimension mismatch: {p1.dim} vs {p2.dim}")
    d = p1.dim
    if d < 1:
        raise ValueError("connected sum needs dimension >= 1")
    groups = [Z] + [direct_sum(p1[k], p2[k]) for k in range(1, d)] + [Z]
    embeds = None if p1.embeds_in is None or p2.embeds_in is None else max(p1.embeds_in, p2.embeds_in)
    return ManifoldProfile(f"{p1.name}#{p2.name}", d, tuple(groups), embeds_in=embeds)


def lemma1_transform(p: ManifoldProfile, k2: int) -> ManifoldProfile:
    """Profile of the ``(k1 + k2 - 1)``-manifold built from a ``(2a+1)``-manifold
    whose only middle homology sits in degree ``a``; that group reappears in
    degrees ``a`` and ``a + k2 - 1``.

    >>> [str(g) for g in lemma1_transform(lens(5), 2).homology]
    ['Z', 'Z_5', 'Z_5', '0', 'Z']
    """
    k1 = p.dim
    if k1 < 3 or k1 % 2 == 0:
        raise ValueError(f"need odd dimension 2a+1 >= 3, got {k1}")
    if k2 < 2:
        raise ValueError("k2 must be >= 2 (k2 = 1 makes both copies coincide)")
    a = (k1 - 1) // 2
    bad = [j for j in range(1, k1) if j != a and not p[j].is_trivial]
    if bad:
        raise ValueError(f"H_{bad[0]}({p.name}) must vanish")
    dim = k1 + k2 - 1
    groups = [TRIVIAL] * (dim + 1)
    groups[0] = groups[dim] = Z
    groups[a] = direct_sum(groups[a], p[a])
    groups[a + k2 - 1] = direct_sum(groups[a + k2 - 1], p[a])
    return _checked(ManifoldProfile(f"S_({k1},{k2})[{p.name}]", dim, tuple(groups)))


@dataclass(frozen=True)
class Bouquet:
    """One-point union of profiles; no parts means the generating polyhedron is a point."""

    parts: tuple[ManifoldProfile, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))

    @classmethod
    def point(cls) -> Bouquet:
        return cls(())

    @classmethod
    def of(cls, *parts: ManifoldProfile) -> Bouquet:
        return cls(parts)

    @property
    def is_point(self) -> bool:
        return not self.parts

    def __str__(self) -> str:
        return "point" if self.is_point else " v ".join(p.name for p in self.parts)


def default_catalog() -> list[ManifoldProfile]:
    entries = [sphere(d) for d in range(1, 9)]
    lenses = [lens(p) for p in (2, 3, 5, 7, 25)]
    entries += lenses
    entries += [barden5(parse_group(t)) for t in ("Z_2^2", "Z_3^2", "Z_5^2")]
    entries += [crowley7(cyclic(k)) for k in (2, 3, 5)]
    entries += [lemma1_transform(l, k2) for l in lenses for k2 in (2, 3)]
    return entries


def catalog_by_name(entries: Sequence[ManifoldProfile]) -> dict[str, ManifoldProfile]:
    return {p.name: p for p in entries}
