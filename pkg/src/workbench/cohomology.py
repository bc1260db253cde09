"""Cohomology dimension series, all in exact integer arithmetic.

Closed forms for elementary abelian groups, the order-p^3 exponent-p group,
the extraspecial regular-sequence quotients, syzygy-dimension recurrences,
and the two Sigma-bounds; plus an actual minimal-resolution computer used
to cross-validate the closed forms on small groups.
"""

from __future__ import annotations

from math import comb

from .groups import PGroup
from .kgmod import KGModule, syzygy_step, trivial

RESOLUTION_GROUP_CAP = 32


def dim_h_elem_abelian(p: int, m: int, r: int, char2_polynomial: bool = False) -> int:
    """dim H^r of an elementary abelian group of rank m: binom(r+m-1, m-1).

    Stated for odd p (polynomial tensor exterior algebra); the same binomial
    counts the polynomial ring for p = 2 behind the explicit flag.
    """
    if p == 2 and not char2_polynomial:
        raise ValueError("for p = 2 pass char2_polynomial=True (same binomial)")
    if r < 0:
        return 0
    return comb(r + m - 1, m - 1)


def poincare_g1(p: int, r: int) -> int:
    """dim H^r of the extraspecial group of order p^3 and exponent p.

    Coefficient of t^r in (1 + t + 2t^2 + 2t^3 + t^4 + ... + t^{2p-1})
    / ((1-t)(1-t^{2p})): the numerator over (1-t) has coefficients
    a_0 = 1, a_j = 2j for 1 <= j <= 3, a_j = j+3 for 4 <= j <= 2p-1,
    and a_j = 2p+2 beyond, convolved with sum_i t^{2pi}.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("needs an odd prime")
    if r < 0:
        return 0

    def a(j: int) -> int:
        if j == 0:
            return 1
        if j <= 3:
            return 2 * j
        if j <= 2 * p - 1:
            return j + 3
        return 2 * p + 2

    total = 0
    i = 0
    while 2 * p * i <= r:
        total += a(r - 2 * p * i)
        i += 1
    return total


def dims_s_chain(m: int, r: int) -> tuple[int, int, int]:
    """(S_r, S#_r, S##_r) for the polynomial ring on m+1 variables modulo
    the first two regular-sequence elements (degrees 2 and 3)."""
    if r < 0:
        return (0, 0, 0)

    def s(j: int) -> int:
        return comb(m + j, m) if j >= 0 else 0

    def s_sharp(j: int) -> int:
        return s(j) - s(j - 2) if j >= 0 else 0

    return (s(r), s_sharp(r), s_sharp(r) - s_sharp(r - 3))


def dim_h_centralizer_char2_bound(m: int, r: int) -> int:
    """binom(m+r, r) - binom(m+r-2, r-2): the centralizer bound in char 2."""
    return comb(m + r, r) - (comb(m + r - 2, r - 2) if r >= 2 else 0)


def dim_h_centralizer_delta_branch(m: int, r: int, h: int) -> int:
    """The case-split estimate behind the centralizer bound.

    With deg(delta) = 2^h: the degree-r part is at most S##_r for
    r < deg(delta), and gains the delta-shifted summand S##_{r - 2^h} for
    deg(delta) <= r < 2 deg(delta); the theorem needs 2^h >= 4.
    """
    deg_delta = 2**h
    if deg_delta < 4:
        raise ValueError("the case split assumes deg(delta) = 2^h >= 4")
    if r >= 2 * deg_delta:
        raise ValueError("the case split covers r < 2 deg(delta)")
    out = dims_s_chain(m, r)[2]
    if r >= deg_delta:
        out += dims_s_chain(m, r - deg_delta)[2]
    return out


def sum_omega_bound_char2(m: int, r: int, order_g: int) -> int:
    """binom(m+r-1, m) |G| + 2 bounds sum_{i<=r} dim of the induced syzygies."""
    if r < 2:
        raise ValueError("bound stated for r >= 2")
    return comb(m + r - 1, m) * order_g + 2


def sum_omega_bound_oddp(p: int, n: int, r: int) -> int:
    """2 p^{2n+1} binom(r+2n-2, 2n-1) for the odd-p centralizer chain."""
    if r < 1 or n < 1:
        raise ValueError("bound stated for r >= 1, n >= 1")
    return 2 * p ** (2 * n + 1) * comb(r + 2 * n - 2, 2 * n - 1)


def dim_h_centralizer_oddp_bound(n: int, m: int) -> int:
    """2 binom(m+2n-2, 2n-2): dim H^m of C_p x G_{n-1} is at most this."""
    return 2 * comb(m + 2 * n - 2, 2 * n - 2)


def omega_dims_from_h(h_dims: list[int], order_g: int) -> list[int]:
    """Syzygy dimensions from cohomology dimensions:
    dim Omega^{j+1} = h_dims[j] * |G| - dim Omega^j, starting at 1."""
    if not h_dims or h_dims[0] != 1:
        raise ValueError("h_dims must start with dim H^0 = 1")
    out = [1]
    for h in h_dims:
        out.append(h * order_g - out[-1])
    return out


def binom_identity_check(c: int, i: int, j: int) -> bool:
    """Vandermonde-style check: sum over a+b=c of binom(a+i,i) binom(b+j,j)
    equals binom(c+i+j+1, i+j+1)."""
    if min(c, i, j) < 0:
        raise ValueError("nonnegative integers only")
    total = sum(comb(a + i, i) * comb(c - a + j, j) for a in range(c + 1))
    return total == comb(c + i + j + 1, i + j + 1)


def minimal_resolution_dims(group: PGroup, r_max: int) -> list[int]:
    """dim H^j(G, k) for j = 0..r_max, read off an actual minimal resolution
    (the cover rank of the j-th syzygy of the trivial module)."""
    if group.order > RESOLUTION_GROUP_CAP:
        raise ValueError(f"resolution computer capped at |G| <= {RESOLUTION_GROUP_CAP}")
    dims = []
    cur: KGModule = trivial(group)
    for _ in range(r_max + 1):
        cur, rank_ = syzygy_step(cur)
        dims.append(rank_)
    return dims
