"""kG-modules as generator-action matrices.

Tensor/dual/restriction/induction, radicals and socles, projective covers
and syzygies Omega^{+-n}, free-summand stripping, endo-trivial and critical
tests, and the central-filtration quotient M-bar with its dimension report.

Everything is exact matrix arithmetic over FieldSpec; free/projective are
interchangeable (group algebras of p-groups in characteristic p).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .ff import (
    FFMatrix,
    FieldSpec,
    from_columns,
    hstack,
    inverse,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
    vstack,
)
from .groups import PGroup, Subgroup, center, frattini


class CapExceeded(RuntimeError):
    """A module operation would exceed the configured dimension cap."""


def max_dim() -> int:
    return int(os.environ.get("WORKBENCH_MAX_DIM", "4096"))


def _check_dim(d: int, what: str) -> None:
    cap = max_dim()
    if d > cap:
        raise CapExceeded(f"{what} needs dimension {d} > cap {cap}")


class KGModule:
    """A kG-module: one invertible action matrix per group generator."""

    def __init__(self, group: PGroup, field: FieldSpec, gen_actions, check=True, dim=None):
        if field.p != group.p:
            raise ValueError("field characteristic must match the group prime")
        if len(gen_actions) != len(group.generators):
            raise ValueError("need one action matrix per group generator")
        self.group = group
        self.field = field
        self.gen_actions = list(gen_actions)
        self.dim = gen_actions[0].rows if gen_actions else (dim if dim is not None else 0)
        self.tensor_factors = None
        if check:
            for a in gen_actions:
                if a.field != field:
                    raise ValueError("action matrix over the wrong field")
                if a.rows != a.cols or a.rows != self.dim:
                    raise ValueError("action matrices must be square, equal size")

    def action_of(self, element: int) -> FFMatrix:
        """Matrix of a group element, evaluated along its generator word."""
        acc = FFMatrix.identity(self.field, self.dim)
        for gi in self.group.words[element]:
            acc = acc @ self.gen_actions[gi]
        return acc

    def all_actions(self) -> list[FFMatrix]:
        """Action of every element, by BFS over the Cayley graph."""
        g = self.group
        acts: list = [None] * g.order
        acts[0] = FFMatrix.identity(self.field, self.dim)
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, gen in enumerate(g.generators):
                    y = g.mul_elems(x, gen)
                    if acts[y] is None:
                        acts[y] = acts[x] @ self.gen_actions[gi]
                        nxt.append(y)
            frontier = nxt
        return acts

    def validate(self) -> None:
        g = self.group
        for a, gen in zip(self.gen_actions, g.generators):
            if not (a ** g.element_order(gen)).is_identity():
                raise AssertionError("generator action order does not divide element order")
        acts = self.all_actions()
        if not acts[0].is_identity():
            raise AssertionError("identity word does not evaluate to the identity")
        if g.order <= 64:
            pairs = [(a, b) for a in range(g.order) for b in range(g.order)]
        else:
            rng = np.random.default_rng(1)
            pairs = [tuple(map(int, rng.integers(0, g.order, 2))) for _ in range(500)]
        for a, b in pairs:
            if not acts[g.mul_elems(a, b)] == acts[a] @ acts[b]:
                raise AssertionError("action is not a homomorphism")

    def __repr__(self):
        return f"KGModule(dim={self.dim} over {self.group.label}, F_{self.field.q})"


# -- constructors --


def trivial(group: PGroup, field: FieldSpec | None = None) -> KGModule:
    field = field or FieldSpec(group.p)
    one = FFMatrix.identity(field, 1)
    return KGModule(group, field, [one.copy() for _ in group.generators], dim=1)


def regular(group: PGroup, field: FieldSpec | None = None) -> KGModule:
    """kG itself: basis {v_h}, g . v_h = v_{gh}."""
    field = field or FieldSpec(group.p)
    _check_dim(group.order, "regular module")
    acts = []
    for gen in group.generators:
        a = np.zeros((group.order, group.order), dtype=np.int64)
        for h in range(group.order):
            a[group.mul_elems(gen, h), h] = 1
        acts.append(FFMatrix(field, a))
    return KGModule(group, field, acts)


def free_module(group: PGroup, rank_: int, field: FieldSpec) -> KGModule:
    """(kG)^rank: block-diagonal copies of the regular module."""
    _check_dim(rank_ * group.order, "free module")
    reg = regular(group, field)
    eye = FFMatrix.identity(field, rank_)
    return KGModule(group, field, [kron(eye, a) for a in reg.gen_actions])


def direct_sum(m: KGModule, n: KGModule) -> KGModule:
    _same_home(m, n)
    _check_dim(m.dim + n.dim, "direct sum")
    acts = []
    for a, b in zip(m.gen_actions, n.gen_actions):
        big = np.zeros((m.dim + n.dim, m.dim + n.dim), dtype=np.int64)
        big[: m.dim, : m.dim] = a.a
        big[m.dim :, m.dim :] = b.a
        acts.append(FFMatrix(m.field, big))
    return KGModule(m.group, m.field, acts)


def dual(m: KGModule) -> KGModule:
    """k-dual with contragredient action: inverse transpose on generators."""
    return KGModule(m.group, m.field, [inverse(a).T for a in m.gen_actions])


def tensor(m: KGModule, n: KGModule) -> KGModule:
    """Tensor over k with diagonal action (Kronecker on generators)."""
    _same_home(m, n)
    _check_dim(m.dim * n.dim, "tensor product")
    out = KGModule(
        m.group, m.field, [kron(a, b) for a, b in zip(m.gen_actions, n.gen_actions)]
    )
    out.tensor_factors = (m, n)
    return out


def _same_home(m: KGModule, n: KGModule) -> None:
    if m.group is not n.group or m.field != n.field:
        raise ValueError("modules live over different groups or fields")


def base_change(m: KGModule, e: int) -> KGModule:
    """View a prime-field module over the degree-e extension."""
    if m.field.e != 1:
        raise ValueError("base change starts from the prime field")
    big = FieldSpec(m.field.p, e)
    return KGModule(m.group, big, [FFMatrix(big, a.a.copy()) for a in m.gen_actions])


def frobenius_twist(m: KGModule) -> KGModule:
    """Entrywise Frobenius on the generator matrices (Galois-twist helper)."""
    f = m.field
    return KGModule(m.group, f, [FFMatrix(f, f.frobenius(a.a)) for a in m.gen_actions])


# -- structure maps --


def t1_matrix(m: KGModule) -> FFMatrix:
    """Matrix of t1 = sum of all group elements acting on m."""
    f = m.field
    if m.tensor_factors is not None:
        a, b = m.tensor_factors
        acts_a = a.all_actions()
        acts_b = b.all_actions()
        total = FFMatrix.zeros(f, m.dim, m.dim)
        for x, y in zip(acts_a, acts_b):
            total = total + kron(x, y)
        return total
    acts = m.all_actions()
    total = FFMatrix.zeros(f, m.dim, m.dim)
    for a in acts:
        total = total + a
    return total


def t1_rank(m: KGModule) -> int:
    """Free rank: m is (no-free-part) + (kG)^{t1_rank}."""
    return rank(t1_matrix(m))


def radical_basis(m: KGModule) -> FFMatrix:
    """Columns spanning Rad m = sum of (g-1)m over generators."""
    f = m.field
    if m.dim == 0 or not m.gen_actions:
        return FFMatrix.zeros(f, m.dim, 0)
    eye = FFMatrix.identity(f, m.dim)
    stacked = hstack([a - eye for a in m.gen_actions])
    red, pivots = rref(stacked.T)
    return FFMatrix(f, red.a[: len(pivots)].T.copy())


def socle_basis(m: KGModule) -> FFMatrix:
    """Columns spanning Soc m = joint fixed points of the generators."""
    f = m.field
    if m.dim == 0 or not m.gen_actions:
        return FFMatrix.identity(f, m.dim)
    eye = FFMatrix.identity(f, m.dim)
    stacked = vstack([a - eye for a in m.gen_actions])
    vecs = kernel_basis(stacked)
    if not vecs:
        return FFMatrix.zeros(f, m.dim, 0)
    return from_columns(f, vecs)


def _complement_columns(m: KGModule, sub_basis: FFMatrix) -> FFMatrix:
    """Standard basis vectors completing sub_basis to a basis of k^dim."""
    f = m.field
    if sub_basis.cols == 0:
        return FFMatrix.identity(f, m.dim)
    aug = hstack([sub_basis, FFMatrix.identity(f, m.dim)])
    _, pivots = rref(aug)
    extra = [p - sub_basis.cols for p in pivots if p >= sub_basis.cols]
    out = np.zeros((m.dim, len(extra)), dtype=np.int64)
    for k, j in enumerate(extra):
        out[j, k] = 1
    return FFMatrix(f, out)


def _submodule_actions(m: KGModule, basis: FFMatrix) -> list[FFMatrix]:
    """Actions of the generators on an invariant column-span, in basis coords."""
    return [solve(basis, a @ basis) for a in m.gen_actions]


def submodule(m: KGModule, basis: FFMatrix) -> KGModule:
    return KGModule(m.group, m.field, _submodule_actions(m, basis))


def syzygy_step(m: KGModule) -> tuple[KGModule, int]:
    """One projective-cover kernel: returns (Omega(m), cover rank).

    The cover is free of rank dim(m/Rad m); the covering map sends the
    i-th free generator to the i-th head preimage.
    """
    f = m.field
    g = m.group
    if m.dim == 0:
        return m, 0
    rad = radical_basis(m)
    head = _complement_columns(m, rad)
    r = head.cols
    _check_dim(r * g.order, "projective cover")
    acts = m.all_actions()
    # theta columns: block i holds act(g) @ head_i for g in element order
    cols = np.zeros((m.dim, r * g.order), dtype=np.int64)
    for i in range(r):
        hv = FFMatrix(f, head.a[:, i : i + 1])
        for x, act in enumerate(acts):
            cols[:, i * g.order + x] = (act @ hv).a[:, 0]
    theta = FFMatrix(f, cols)
    kb = kernel_basis(theta)
    cover = free_module(g, r, f)
    if not kb:
        zero = [FFMatrix.zeros(f, 0, 0) for _ in g.generators]
        return KGModule(g, f, zero, check=False), r
    kmat = from_columns(f, kb)
    omega_acts = [solve(kmat, a @ kmat) for a in cover.gen_actions]
    return KGModule(g, f, omega_acts), r


def strip_free(m: KGModule) -> tuple[KGModule, int]:
    """Split off every free summand: m = N + (kG)^r with t1(N) = 0.

    The complement is the kernel of a module projection extending the
    identity map of the free part F.  Every functional phi in M* induces
    the module map v -> sum_g phi(g^{-1} v) v_g into kG, so a projection
    onto (kG)^r only needs r functionals dual to the free basis of F.
    """
    f, g = m.field, m.group
    t1 = t1_matrix(m)
    red, pivots = rref(t1)
    r = len(pivots)
    if r == 0:
        return m, 0
    acts = m.all_actions()
    nfree = r * g.order
    # free basis of F: columns act(x) @ m_i with m_i the pivot preimages
    cols = np.zeros((m.dim, nfree), dtype=np.int64)
    for i, pc in enumerate(pivots):
        for x, act in enumerate(acts):
            cols[:, i * g.order + x] = act.a[:, pc]
    incl = FFMatrix(f, cols)
    # functionals with phi_i(x m_j) = delta_{ij} delta_{x,1}
    pattern = np.zeros((nfree, r), dtype=np.int64)
    for i in range(r):
        pattern[i * g.order, i] = 1
    try:
        phis = solve(incl.T, FFMatrix(f, pattern)).T
    except ValueError as exc:
        raise AssertionError(
            "free part admits no projection (invariant violation)"
        ) from exc
    proj_rows = np.zeros((nfree, m.dim), dtype=np.int64)
    for x in range(g.order):
        inv_act = acts[g.inv_elem(x)]
        block = FFMatrix(f, phis.a) @ inv_act
        for i in range(r):
            proj_rows[i * g.order + x, :] = block.a[i, :]
    proj = FFMatrix(f, proj_rows)
    if not (proj @ incl).is_identity():
        raise AssertionError("projection does not restrict to the identity on F")
    kb = kernel_basis(proj)
    if len(kb) != m.dim - nfree:
        raise AssertionError("projection kernel has the wrong dimension")
    if not kb:
        zero = [FFMatrix.zeros(f, 0, 0) for _ in g.generators]
        return KGModule(g, f, zero, check=False), r
    basis = from_columns(f, kb)
    return submodule(m, basis), r


def omega(m: KGModule, n: int, cancel=None) -> KGModule:
    """Heller translate Omega^n; n = 0 strips free summands."""
    if n == 0:
        return strip_free(m)[0]
    if n < 0:
        return dual(omega(dual(m), -n, cancel=cancel))
    cur = m
    for _ in range(n):
        if cancel is not None and cancel():
            raise InterruptedError("syzygy chain cancelled")
        cur, _ = syzygy_step(cur)
    return cur


def restrict(m: KGModule, h: Subgroup) -> KGModule:
    """Restriction along a subgroup, re-expressed over h as its own PGroup."""
    if h.parent is not m.group:
        raise ValueError("subgroup of a different group")
    hp, embed = h.as_pgroup()
    acts = [m.action_of(embed[gen]) for gen in hp.generators]
    return KGModule(hp, m.field, acts, dim=m.dim)


def induce(m: KGModule, g: PGroup, embedding: list[int]) -> KGModule:
    """Induction along an embedding of m's group into g (coset-block module)."""
    h = m.group
    img = [embedding[x] for x in range(h.order)]
    img_set = set(img)
    if len(img_set) != h.order:
        raise ValueError("embedding is not injective")
    for a in range(h.order):
        for b in h.generators:
            if embedding[h.mul_elems(a, b)] != g.mul_elems(embedding[a], embedding[b]):
                raise ValueError("embedding is not a homomorphism")
    index = g.order // h.order
    _check_dim(index * m.dim, "induced module")
    # left coset reps, each coset tagged by its least element
    coset_of = {}
    reps = []
    for x in range(g.order):
        if x in coset_of:
            continue
        members = sorted(g.mul_elems(x, e) for e in img_set)
        rep = members[0]
        for y in members:
            coset_of[y] = len(reps)
        reps.append(rep)
    pos_in_h = {e: i for i, e in enumerate(img)}
    acts = []
    for gen in g.generators:
        big = np.zeros((index * m.dim, index * m.dim), dtype=np.int64)
        for c, t in enumerate(reps):
            gt = g.mul_elems(gen, t)
            c2 = coset_of[gt]
            helem = g.mul_elems(g.inv_elem(reps[c2]), gt)
            block = m.action_of(pos_in_h[helem])
            big[c2 * m.dim : (c2 + 1) * m.dim, c * m.dim : (c + 1) * m.dim] = block.a
        acts.append(FFMatrix(m.field, big))
    return KGModule(g, m.field, acts)


# -- endo-trivial / critical tests --


def is_endotrivial(m: KGModule) -> bool:
    """End_k(m) = k + free, tested by the exact dimension identity."""
    e = tensor(m, dual(m))
    return e.dim == t1_rank(e) * m.group.order + 1


def restriction_is_k_plus_free(m: KGModule, h: Subgroup) -> bool:
    res = restrict(m, h)
    return m.dim == t1_rank(res) * h.order + 1


def is_critical(m: KGModule, maximal_subgroups_list=None) -> bool:
    """Indecomposable endo-trivial with k + free restriction to every
    maximal subgroup.  Indecomposability at desk scale: no free summand
    plus endo-triviality (the indecomposable representative is unique
    modulo free summands).  Cheap tests run first."""
    from .groups import maximal_subgroups as _maximals

    g = m.group
    if g.is_abelian() and g.exponent() == g.p:
        raise ValueError("criticality is defined for non-elementary-abelian groups")
    if t1_rank(m) != 0 and m.dim > 1:
        return False
    maxes = maximal_subgroups_list or _maximals(m.group)
    for h in maxes:
        if not restriction_is_k_plus_free(m, h):
            return False
    return is_endotrivial(m)


# -- the central filtration and M-bar --


@dataclass
class FiltrationReport:
    """Dimensions along K_1 < ... < K_p = M and I_{p-1} < ... < I_1."""

    k_dims: list[int]
    i_dims: list[int]
    dim_bar: int

    @property
    def dim(self) -> int:
        return self.k_dims[-1]


def central_generator(g: PGroup) -> int:
    """The designated order-p central element z (Frattini generator)."""
    if "z" in g.meta:
        return int(g.meta["z"])
    phi = frattini(g)
    if phi.order == g.p:
        for e in phi.elements:
            if e:
                return int(e)
    zc = center(g)
    for e in zc.elements:
        if g.element_order(e) == g.p:
            return int(e)
    raise ValueError("no central element of order p")


def bar_quotient(m: KGModule) -> tuple[KGModule, FiltrationReport]:
    """M-bar = M/M' over G/Z, with the kernel/image filtration dimensions.

    Precondition: restriction to Z = <z> is k + free (checked exactly).
    """
    from .groups import quotient_group

    f, g = m.field, m.group
    p = g.p
    z = central_generator(g)
    az = m.action_of(z)
    eye = FFMatrix.identity(f, m.dim)
    d = az - eye
    # restriction to Z must be k + free
    t1z = FFMatrix.identity(f, m.dim)
    acc = eye
    for _ in range(p - 1):
        acc = acc @ az
        t1z = t1z + acc
    rz = rank(t1z)
    if m.dim != rz * p + 1:
        raise ValueError("restriction to the center is not k + free")
    powers = [eye]
    for _ in range(p):
        powers.append(powers[-1] @ d)
    k_dims = [m.dim - rank(powers[i]) for i in range(1, p + 1)]
    i_dims = [rank(powers[i]) for i in range(1, p)]
    mprime = kernel_basis(powers[p - 1])
    mp_basis = from_columns(f, mprime) if mprime else FFMatrix.zeros(f, m.dim, 0)
    comp = _complement_columns(m, mp_basis)
    full = hstack([mp_basis, comp]) if mp_basis.cols else comp
    inv_full = inverse(full)
    proj_rows = FFMatrix(f, inv_full.a[mp_basis.cols :, :].copy())
    quo, proj = quotient_group(g, [g.power(z, i) for i in range(p)])
    acts = []
    for qgen in quo.generators:
        lift = next(x for x in g.generators if int(proj[x]) == qgen)
        acts.append(proj_rows @ m.action_of(lift) @ comp)
    bar = KGModule(quo, f, acts)
    report = FiltrationReport(k_dims=k_dims, i_dims=i_dims, dim_bar=bar.dim)
    return bar, report


# -- JSON wire format --


def module_to_json(m: KGModule) -> dict:
    return {
        "schema": 1,
        "field": {"p": m.field.p, "e": m.field.e, "modulus": list(m.field.modulus)},
        "group": m.group.label,
        "dim": m.dim,
        "generators": [a.to_coeff_lists() for a in m.gen_actions],
    }


def module_from_json(data: dict, group: PGroup) -> KGModule:
    if data.get("schema") != 1:
        raise ValueError("unknown module schema")
    fd = data["field"]
    field = FieldSpec(fd["p"], fd["e"], tuple(fd["modulus"]))
    if data["group"] != group.label:
        raise ValueError(
            f"module was saved for group {data['group']!r}, not {group.label!r}"
        )
    acts = [FFMatrix.from_coeff_lists(field, gmat) for gmat in data["generators"]]
    mod = KGModule(group, field, acts)
    if mod.dim != data["dim"]:
        raise ValueError("stored dimension disagrees with the matrices")
    return mod
