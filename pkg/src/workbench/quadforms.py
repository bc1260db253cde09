"""Quadratic forms over F_2 attached to (almost) extraspecial 2-groups.

The three closed-form families, their bilinear forms, exhaustive maximal
isotropic-subspace search, evaluation of the Frobenius-twisted regular
sequence over extension fields, and the classical group orders with the
cyclic p'-subgroup bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import FieldSpec
from .groups import PGroup

FAMILIES = ("type1", "type2", "type3")


@dataclass(frozen=True)
class QuadraticForm:
    """One of the three standard forms on F_2^m.

    type1 (m = 2n):  x1 x2 + ... + x_{2n-1} x_{2n}
    type2 (m = 2n):  x1 x2 + ... + x_{2n-3} x_{2n-2}
                     + x_{2n-1}^2 + x_{2n-1} x_{2n} + x_{2n}^2
    type3 (m = 2n+1): x1 x2 + ... + x_{2n-1} x_{2n} + x_{2n+1}^2
    """

    m: int
    family: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "type3":
            if self.m % 2 == 0 or self.m < 3:
                raise ValueError("type3 needs odd m >= 3")
        else:
            if self.m % 2 or self.m < 2:
                raise ValueError(f"{self.family} needs even m >= 2")

    @property
    def n(self) -> int:
        return self.m // 2

    def terms(self) -> list[tuple[int, int]]:
        """Monomials x_i x_j as 0-based index pairs (i == j for squares)."""
        if self.family == "type1":
            return [(2 * i, 2 * i + 1) for i in range(self.n)]
        if self.family == "type2":
            out = [(2 * i, 2 * i + 1) for i in range(self.n - 1)]
            a, b = self.m - 2, self.m - 1
            return out + [(a, a), (a, b), (b, b)]
        out = [(2 * i, 2 * i + 1) for i in range(self.n)]
        return out + [(self.m - 1, self.m - 1)]


def q_eval(q: QuadraticForm, x) -> int:
    """Value of the form on a vector of bits."""
    if len(x) != q.m:
        raise ValueError("dimension mismatch")
    total = 0
    for i, j in q.terms():
        total ^= (x[i] & x[j]) & 1
    return total


def bilinear(q: QuadraticForm, x, y) -> int:
    """b(x, y) = q(x+y) + q(x) + q(y); alternating with b(x, x) = 0."""
    s = tuple((a ^ b) & 1 for a, b in zip(x, y))
    return q_eval(q, s) ^ q_eval(q, x) ^ q_eval(q, y)


def q_eval_extended(q: QuadraticForm, field: FieldSpec, nu) -> int:
    """The same polynomial with coefficients expanded to F_{2^e}."""
    if field.p != 2:
        raise ValueError("these forms live in characteristic 2")
    if len(nu) != q.m:
        raise ValueError("dimension mismatch")
    total = 0
    for i, j in q.terms():
        total = field.add(total, field.mul(nu[i], nu[j]))
    return int(total)


def bilinear_extended(q: QuadraticForm, field: FieldSpec, x, y) -> int:
    s = tuple(int(field.add(a, b)) for a, b in zip(x, y))
    return int(
        field.add(
            q_eval_extended(q, field, s),
            field.add(q_eval_extended(q, field, x), q_eval_extended(q, field, y)),
        )
    )


def max_isotropic_codim(q: QuadraticForm) -> int:
    """m minus the largest dimension of a totally isotropic subspace.

    Depth-first search over echelonized bases; exact for m <= 12.
    """
    if q.m > 12:
        raise ValueError("isotropic search capped at m = 12")
    m = q.m
    vecs = list(range(1, 1 << m))

    def bits(v):
        return tuple((v >> k) & 1 for k in range(m))

    qv = [0] * (1 << m)
    for v in vecs:
        qv[v] = q_eval(q, bits(v))
    singular = [v for v in vecs if qv[v] == 0]
    # b(x, y) = q(x^y) + q(x) + q(y) on bitmasks
    best = 0

    def extend(basis_span: set, candidates: list, dim: int):
        nonlocal best
        best = max(best, dim)
        # a singular subspace inside `candidates` has < log2(c+1) extra dims
        cap = dim
        c = len(candidates)
        while c:
            cap += 1
            c //= 2
        if cap <= best:
            return
        for idx, v in enumerate(candidates):
            if v in basis_span:
                continue
            nxt = [
                w
                for w in candidates[idx + 1 :]
                if qv[w ^ v] == 0 and w not in basis_span
            ]
            new_span = basis_span | {s ^ v for s in basis_span}
            extend(new_span, nxt, dim + 1)

    extend({0}, singular, 0)
    return m - best


def regular_sequence_values(
    q: QuadraticForm, field: FieldSpec, nu, h: int
) -> list[int]:
    """[q(nu), b(nu, F(nu)), ..., b(nu, F^{h-1}(nu))] over F_{2^e}."""
    nu = [int(c) for c in nu]
    out = [q_eval_extended(q, field, nu)]
    fnu = nu
    for _ in range(1, h):
        fnu = [int(field.frobenius(c)) for c in fnu]
        out.append(bilinear_extended(q, field, nu, fnu))
    return out


# -- group <-> form consistency --


def form_values_from_group(g: PGroup) -> dict[tuple, int]:
    """Recompute q on G/Z from the table: lift(v)^2 = z^{q(v)}.

    Uses the construction basis stored by build_extraspecial; the value is
    independent of the chosen lift because z is central of order 2.
    """
    basis = g.meta.get("form_basis")
    z = g.meta.get("z")
    if basis is None or z is None:
        raise ValueError("group carries no stored form basis")
    m = len(basis)
    out = {}
    for v in range(1 << m):
        bits = tuple((v >> k) & 1 for k in range(m))
        lift = 0
        for b, bit in zip(basis, bits):
            if bit:
                lift = g.mul_elems(lift, b)
        sq = g.mul_elems(lift, lift)
        if sq == 0:
            out[bits] = 0
        elif sq == z:
            out[bits] = 1
        else:
            raise ValueError("squares do not land in <z>: not extraspecial data")
    return out


def bilinear_values_from_group(g: PGroup) -> dict[tuple, int]:
    """b(x, y) from commutators of lifts: [lift(x), lift(y)] = z^{b(x,y)}."""
    basis = g.meta.get("form_basis")
    z = g.meta.get("z")
    m = len(basis)

    def lift(bits):
        acc = 0
        for b, bit in zip(basis, bits):
            if bit:
                acc = g.mul_elems(acc, b)
        return acc

    out = {}
    for v in range(1 << m):
        xb = tuple((v >> k) & 1 for k in range(m))
        lx = lift(xb)
        for w in range(1 << m):
            yb = tuple((w >> k) & 1 for k in range(m))
            c = g.commutator(lx, lift(yb))
            if c == 0:
                out[(xb, yb)] = 0
            elif c == z:
                out[(xb, yb)] = 1
            else:
                raise ValueError("commutators do not land in <z>")
    return out


def form_of_group(g: PGroup) -> QuadraticForm:
    fam = g.meta.get("family")
    if fam not in FAMILIES:
        raise ValueError("group was not built as a char-2 extraspecial family")
    return QuadraticForm(int(g.meta["m"]), fam)


# -- classical group orders --


def orthogonal_group_order(family: str, n: int) -> int:
    """|O_G| for the three char-2 families (type3 gives Sp(2n, F_2))."""
    if n < 1:
        raise ValueError("need n >= 1")
    if family == "type1":
        out = 2 * 2 ** (n * (n - 1)) * (2**n - 1)
        for i in range(1, n):
            out *= 4**i - 1
        return out
    if family == "type2":
        out = 2 * 2 ** (n * (n - 1)) * (2**n + 1)
        for i in range(1, n):
            out *= 4**i - 1
        return out
    if family == "type3":
        return symplectic_group_order(2, n)
    raise ValueError(f"unknown family {family!r}")


def symplectic_group_order(p: int, n: int) -> int:
    """|Sp(2n, F_p)| = p^{n^2} prod (p^{2i} - 1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = p ** (n * n)
    for i in range(1, n + 1):
        out *= p ** (2 * i) - 1
    return out


def cyclic_pprime_bound(p: int, n: int) -> int:
    """Upper bound (p+1)^n for cyclic p'-subgroups of the classical group."""
    return (p + 1) ** n
