"""Rank varieties for elementary abelian p-groups.

Shifted units u_alpha = 1 + sum alpha_i (x_i - 1), Jordan-type freeness
tests point by point, exhaustive projective scans over small extension
fields, F_p-rationality of lines, and Frobenius orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ff import FFMatrix, FieldSpec, rank, rref
from .groups import PGroup
from .kgmod import CapExceeded, KGModule, base_change, regular

SCAN_CAP = 10**6


@dataclass(frozen=True)
class VarietyPoint:
    """A projective point: nonzero coordinates, first nonzero entry = 1."""

    field: FieldSpec
    coords: tuple

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("variety points are nonzero")
        lead = next(c for c in self.coords if c)
        if lead != 1:
            raise ValueError("variety points are normalized (leading 1)")

    def coord_strings(self) -> list[str]:
        return [self.field.elem_str(c) for c in self.coords]

    def __repr__(self):
        return "(" + ", ".join(self.coord_strings()) + ")"


def normalize_point(field: FieldSpec, coords) -> VarietyPoint:
    coords = tuple(int(c) % field.q for c in coords)
    if not any(coords):
        raise ValueError("cannot normalize the zero vector")
    lead = next(c for c in coords if c)
    scale = field.inv(lead)
    return VarietyPoint(field, tuple(int(field.mul(c, scale)) for c in coords))


def _check_elementary_abelian_rank(e: PGroup, n: int) -> None:
    if e.exponent() != e.p or not e.is_abelian():
        raise ValueError("rank varieties need an elementary abelian group")
    if e.p**n != e.order or len(e.generators) != n:
        raise ValueError("coordinate count must match the rank")


def shifted_unit(e: PGroup, m: KGModule, alpha: VarietyPoint) -> FFMatrix:
    """Matrix of u_alpha = 1 + sum alpha_i (x_i - 1) acting on m."""
    if m.group is not e:
        raise ValueError("module must live over the given group")
    n = len(alpha.coords)
    _check_elementary_abelian_rank(e, n)
    if m.field != alpha.field:
        raise ValueError("module must be base-changed to the field of alpha")
    f = m.field
    eye = FFMatrix.identity(f, m.dim)
    u = eye
    for c, act in zip(alpha.coords, m.gen_actions):
        if c:
            u = u + (act - eye).scale(c)
    return u


def is_free_at(m: KGModule, alpha: VarietyPoint) -> bool:
    """Free over k<u_alpha> iff all Jordan blocks of u_alpha have size p."""
    p = m.group.p
    if m.dim % p:
        return False
    u = shifted_unit(m.group, m, alpha)
    eye = FFMatrix.identity(m.field, m.dim)
    nil = u - eye
    power = nil
    for _ in range(p - 2):
        power = power @ nil
    return rank(power) == m.dim // p


def projective_points(field: FieldSpec, n: int) -> list[VarietyPoint]:
    """All projective points of F_q^n in lexicographic coordinate order."""
    q = field.q
    count = (q**n - 1) // (q - 1)
    if count > SCAN_CAP:
        raise CapExceeded(f"projective scan of {count} points exceeds {SCAN_CAP}")
    pts = []
    # ascending tuple order: later leading position sorts first
    for lead in range(n - 1, -1, -1):
        for tail in product(range(q), repeat=n - 1 - lead):
            coords = (0,) * lead + (1,) + tail
            pts.append(VarietyPoint(field, coords))
    return pts


def rank_variety_scan(m: KGModule, e: int = 2) -> list[VarietyPoint]:
    """All projective points over F_{p^e} where m is not u_alpha-free."""
    g = m.group
    n = len(g.generators)
    _check_elementary_abelian_rank(g, n)
    if m.field.e == 1 and e > 1:
        m = base_change(m, e)
    elif m.field.e != e:
        raise ValueError("module field does not match the requested extension")
    pts = projective_points(m.field, n)
    return [a for a in pts if not is_free_at(m, a)]


def is_fp_rational_line(alpha: VarietyPoint) -> bool:
    """Does some nonzero F_p-linear equation annihilate alpha?"""
    f = alpha.field
    n = len(alpha.coords)
    rows = [[f.coeff_vector(c)[j] for c in alpha.coords] for j in range(f.e)]
    prime = FieldSpec(f.p)
    return rank(FFMatrix(prime, np.array(rows, dtype=np.int64))) < n


def frobenius_orbit(alpha: VarietyPoint) -> list[VarietyPoint]:
    """Projective orbit of alpha under the entrywise p-power map."""
    f = alpha.field
    orbit = [alpha]
    seen = {alpha.coords}
    cur = alpha
    while True:
        nxt = normalize_point(f, [f.frobenius(c) for c in cur.coords])
        if nxt.coords in seen:
            return orbit
        orbit.append(nxt)
        seen.add(nxt.coords)
        cur = nxt


def line_module(e: PGroup, alpha: VarietyPoint) -> KGModule:
    """kE/(u_alpha - 1): dimension |E|/p, rank variety = the line of alpha."""
    n = len(alpha.coords)
    _check_elementary_abelian_rank(e, n)
    f = alpha.field
    reg = regular(e, FieldSpec(e.p)) if f.e == 1 else base_change(regular(e), f.e)
    if reg.field != f:
        raise ValueError("field mismatch")
    u = shifted_unit(e, reg, alpha)
    eye = FFMatrix.identity(f, reg.dim)
    img = u - eye
    red, pivots = rref(img.T)
    ideal = FFMatrix(f, red.a[: len(pivots)].T.copy())
    # quotient module kE/(u-1)kE in complement coordinates
    from .kgmod import _complement_columns
    from .ff import hstack, inverse

    comp = _complement_columns(reg, ideal)
    full = hstack([ideal, comp])
    proj = FFMatrix(f, inverse(full).a[ideal.cols :, :].copy())
    acts = [proj @ a @ comp for a in reg.gen_actions]
    return KGModule(e, f, acts)
