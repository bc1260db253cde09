"""Explicit finite p-groups as multiplication tables.

Cyclic, elementary abelian, dihedral, quaternion, semi-dihedral, and
(almost) extraspecial groups via central products, plus exhaustive
subgroup machinery (center, Frattini, centralizers, normalizers, maximal
and elementary abelian subgroups, conjugacy classes, Dade's class X).

Elements are integer indices into a dense order x order table; index 0 is
always the identity.  Size caps keep every scan exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def order_cap(p: int) -> int:
    if p == 2:
        return 256
    if p == 3:
        return 243
    return p**3


class PGroup:
    """A finite p-group given by its full multiplication table."""

    def __init__(self, p, mul, generators, label="G", meta=None, check=True):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int64))
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.p = p
        self.order = n
        self.mul = mul
        self.label = label
        self.meta = dict(meta or {})
        self.identity = 0
        if check:
            if not (np.array_equal(mul[0], np.arange(n)) and np.array_equal(mul[:, 0], np.arange(n))):
                raise ValueError("index 0 must be the identity")
            m = n
            while m % p == 0:
                m //= p
            if m != 1:
                raise ValueError(f"order {n} is not a power of {p}")
            if n > order_cap(p):
                raise ValueError(f"order {n} exceeds the cap for p={p}")
        inv = np.argmax(mul == 0, axis=1)
        if check and not np.array_equal(mul[np.arange(n), inv], np.zeros(n, dtype=np.int64)):
            raise ValueError("table has no inverses")
        self._inv = inv
        self.generators = [int(g) for g in generators]
        self.words = self._bfs_words()
        self._conj = None
        self._orders = None

    def _bfs_words(self):
        words = [None] * self.order
        words[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for gi, gen in enumerate(self.generators):
                    h = int(self.mul[g, gen])
                    if words[h] is None:
                        words[h] = words[g] + (gi,)
                        nxt.append(h)
            frontier = nxt
        if any(w is None for w in words):
            raise ValueError("generators do not generate the group")
        return words

    # -- element arithmetic --

    def mul_elems(self, a, b) -> int:
        return int(self.mul[a, b])

    def inv_elem(self, a) -> int:
        return int(self._inv[a])

    def conj_elems(self, g, h) -> int:
        """g h g^{-1}"""
        return int(self.mul[self.mul[g, h], self._inv[g]])

    def commutator(self, a, b) -> int:
        """[a, b] = a b a^{-1} b^{-1}"""
        return int(self.mul[self.mul[self.mul[a, b], self._inv[a]], self._inv[b]])

    def power(self, g, k: int) -> int:
        out, g = 0, int(g)
        if k < 0:
            g, k = self.inv_elem(g), -k
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            acc = np.arange(n)
            k = 1
            while np.any(orders == 0):
                done = (acc == 0) & (orders == 0)
                orders[done] = k
                acc = self.mul[acc, np.arange(n)]
                k += 1
            self._orders = orders
        return self._orders

    def element_order(self, g) -> int:
        return int(self.element_orders()[g])

    def exponent(self) -> int:
        return int(self.element_orders().max())

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def conj_table(self) -> np.ndarray:
        """conj[g, h] = g h g^{-1}"""
        if self._conj is None:
            self._conj = self.mul[self.mul, self._inv[:, None]]
        return self._conj

    def pth_powers(self) -> np.ndarray:
        acc = np.arange(self.order)
        for _ in range(self.p - 1):
            acc = self.mul[acc, np.arange(self.order)]
        return acc

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, elements)

    def validate(self, rng=None) -> None:
        """Full group-law audit: exhaustive below order 64, sampled above."""
        n = self.order
        if n <= 64:
            a = np.arange(n)
            lhs = self.mul[self.mul[a[:, None, None], a[None, :, None]], a[None, None, :]]
            rhs = self.mul[a[:, None, None], self.mul[a[None, :, None], a[None, None, :]]]
            if not np.array_equal(lhs, rhs):
                raise AssertionError("associativity fails")
        else:
            rng = rng or np.random.default_rng(0)
            for _ in range(2000):
                a, b, c = (int(x) for x in rng.integers(0, n, size=3))
                if self.mul[self.mul[a, b], c] != self.mul[a, self.mul[b, c]]:
                    raise AssertionError("associativity fails")
        orders = self.element_orders()
        for o in np.unique(orders):
            o = int(o)
            while o % self.p == 0:
                o //= self.p
            if o != 1:
                raise AssertionError("element order is not a p-power")
        for g, w in enumerate(self.words):
            acc = 0
            for gi in w:
                acc = self.mul_elems(acc, self.generators[gi])
            if acc != g:
                raise AssertionError(f"stored word of element {g} is wrong")

    def __repr__(self):
        return f"PGroup({self.label}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a PGroup, stored as a sorted element index set."""

    parent: PGroup
    elements: tuple = field(default=())

    def __init__(self, parent, elements):
        elems = tuple(sorted(int(e) for e in set(elements)))
        if not elems or elems[0] != 0:
            raise ValueError("a subgroup must contain the identity")
        arr = np.array(elems)
        inside = np.zeros(parent.order, dtype=bool)
        inside[arr] = True
        if not inside[parent.mul[np.ix_(arr, arr)]].all():
            raise ValueError("element set is not closed under multiplication")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "elements", elems)

    @classmethod
    def _unchecked(cls, parent, sorted_elems: tuple) -> "Subgroup":
        s = object.__new__(cls)
        object.__setattr__(s, "parent", parent)
        object.__setattr__(s, "elements", sorted_elems)
        return s

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g) -> bool:
        return int(g) in set(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def is_elementary_abelian(self) -> bool:
        arr = np.array(self.elements)
        sub = self.parent.mul[np.ix_(arr, arr)]
        if not np.array_equal(sub, sub.T):
            return False
        orders = self.parent.element_orders()[arr]
        return bool(np.all((orders == 1) | (orders == self.parent.p)))

    def rank(self) -> int:
        """log_p of the order (meaningful for elementary abelian subgroups)."""
        r, n = 0, self.order
        while n > 1:
            n //= self.parent.p
            r += 1
        return r

    def as_pgroup(self) -> tuple[PGroup, list[int]]:
        """Materialize as a PGroup; returns (group, embedding) where
        embedding[i] is the parent index of the new group's element i."""
        elems = list(self.elements)
        pos = {e: i for i, e in enumerate(elems)}
        table = np.array(
            [[pos[int(self.parent.mul[a, b])] for b in elems] for a in elems],
            dtype=np.int64,
        )
        gens = minimal_generating_set_table(table)
        sub = PGroup(
            self.parent.p, table, gens, label=f"sub{self.order}<{self.parent.label}"
        )
        return sub, elems

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.label})"


@dataclass
class CentralProductSpec:
    """Data for G1 * G2 = (G1 x G2) / <(z1, z2^{-1})>."""

    left: PGroup
    right: PGroup
    z_left: int
    z_right: int


# -- table-level helpers --


def closure_table(table: np.ndarray, seed) -> np.ndarray:
    """Closure of {identity} | seed under the table's multiplication."""
    cur = np.unique(np.concatenate([[0], np.asarray(list(seed), dtype=np.int64)]))
    while True:
        new = np.unique(table[np.ix_(cur, cur)])
        if new.size == cur.size:
            return cur
        cur = new


def minimal_generating_set_table(table: np.ndarray) -> list[int]:
    """Greedy small generating set for a table with identity 0."""
    n = table.shape[0]
    gens: list[int] = []
    cur = np.array([0])
    while cur.size < n:
        # largest closure jump first keeps the set near-minimal
        best, best_size = None, 0
        outside = np.setdiff1d(np.arange(n), cur)
        for g in outside:
            size = closure_table(table, np.append(cur, g)).size
            if size > best_size:
                best, best_size = int(g), size
                if size == n:
                    break
        gens.append(best)
        cur = closure_table(table, gens)
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and closure_table(table, rest).size == n:
            gens = rest
    return gens or ([] if n == 1 else gens)


def _relabel_with_identity_first(table, identity):
    n = table.shape[0]
    perm = [identity] + [i for i in range(n) if i != identity]
    inv_perm = np.empty(n, dtype=np.int64)
    inv_perm[perm] = np.arange(n)
    new = inv_perm[table[np.ix_(perm, perm)]]
    return new, perm, inv_perm


# -- constructors --


def build_cyclic(p: int, n: int) -> PGroup:
    order = p**n
    if order > order_cap(p):
        raise ValueError("size cap exceeded")
    idx = np.arange(order)
    table = (idx[:, None] + idx[None, :]) % order
    gens = [1] if order > 1 else []
    return PGroup(p, table, gens, label=f"C({order})")


def build_elementary_abelian(p: int, n: int) -> PGroup:
    order = p**n
    if order > order_cap(p):
        raise ValueError("size cap exceeded")
    idx = np.arange(order)
    table = np.zeros((order, order), dtype=np.int64)
    for i in range(n):
        pi = p**i
        table += (((idx[:, None] // pi) + (idx[None, :] // pi)) % p) * pi
    gens = [p**i for i in range(n)]
    return PGroup(p, table, gens, label=f"E({p},{n})")


def _two_part_table(order, twist):
    """Table for groups <x, y> with elements x^i y^s, s in {0,1}.

    twist(i, s, j, t) returns the x-exponent of (x^i y^s)(x^j y^t); the
    y-exponent is always s xor t.  Index encoding: i + (order//2) * s.
    """
    half = order // 2
    table = np.zeros((order, order), dtype=np.int64)
    for a in range(order):
        i, s = a % half, a // half
        for b in range(order):
            j, t = b % half, b // half
            table[a, b] = twist(i, s, j, t) % half + half * (s ^ t)
    return table, half


def build_dihedral(order: int) -> PGroup:
    if order < 8 or order & (order - 1):
        raise ValueError("dihedral order must be a power of 2, at least 8")
    table, half = _two_part_table(order, lambda i, s, j, t: i + (j if s == 0 else -j))
    return PGroup(2, table, [1, half], label=f"D({order})")


def build_quaternion(order: int) -> PGroup:
    if order < 8 or order & (order - 1):
        raise ValueError("quaternion order must be a power of 2, at least 8")
    half = order // 2
    table, half = _two_part_table(
        order, lambda i, s, j, t: i + (j if s == 0 else -j) + s * t * (half // 2)
    )
    return PGroup(2, table, [1, half], label=f"Q({order})")


def build_semidihedral(order: int) -> PGroup:
    if order < 16 or order & (order - 1):
        raise ValueError("semidihedral order must be a power of 2, at least 16")
    half = order // 2
    r = half // 2 - 1
    table, half = _two_part_table(order, lambda i, s, j, t: i + j * (r if s else 1))
    return PGroup(2, table, [1, half], label=f"SD({order})")


def build_heisenberg(p: int) -> PGroup:
    """Extraspecial group of order p^3 and exponent p (p odd)."""
    if p == 2:
        raise ValueError("exponent-p extraspecial groups need an odd prime")
    order = p**3
    table = np.zeros((order, order), dtype=np.int64)
    for g in range(order):
        a, b, c = g % p, (g // p) % p, g // p**2
        for h in range(order):
            a2, b2, c2 = h % p, (h // p) % p, h // p**2
            table[g, h] = (
                (a + a2) % p + p * ((b + b2) % p) + p**2 * ((c + c2 + a * b2) % p)
            )
    meta = {"z": p**2, "form_basis": [1, p], "family": "expp", "n": 1, "m": 2}
    return PGroup(p, table, [1, p], label=f"ES({p},1,expp)", meta=meta)


def direct_product(a: PGroup, b: PGroup) -> tuple[PGroup, list[int], list[int]]:
    """Returns (A x B, embedding of A, embedding of B)."""
    if a.p != b.p:
        raise ValueError("direct product needs a common prime")
    na, nb = a.order, b.order
    ga = np.repeat(np.arange(na), nb)
    gb = np.tile(np.arange(nb), na)
    table = a.mul[ga[:, None], ga[None, :]] * nb + b.mul[gb[:, None], gb[None, :]]
    emb_a = [int(x) * nb for x in range(na)]
    emb_b = list(range(nb))
    gens = [g * nb for g in a.generators] + list(b.generators)
    prod = PGroup(
        a.p, table, gens, label=f"({a.label}x{b.label})", check=False
    )
    return prod, emb_a, emb_b


def quotient_group(g: PGroup, normal_elements) -> tuple[PGroup, np.ndarray]:
    """Quotient by a normal subgroup; returns (G/N, projection array)."""
    narr = np.array(sorted(set(int(x) for x in normal_elements)), dtype=np.int64)
    # coset id = smallest member of the left coset gN
    coset_min = g.mul[:, narr].min(axis=1)
    reps = np.unique(coset_min)
    if reps[0] != 0:
        raise ValueError("normal subgroup must contain the identity")
    rep_pos = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([rep_pos[int(c)] for c in coset_min], dtype=np.int64)
    table = proj[g.mul[np.ix_(reps, reps)]]
    cand = []
    for gen in g.generators:
        q = int(proj[gen])
        if q and q not in cand:
            cand.append(q)
    if not cand and len(reps) > 1:
        cand = minimal_generating_set_table(table)
    quo = PGroup(g.p, table, cand, label=f"{g.label}/N", check=False)
    return quo, proj


def central_product(spec: CentralProductSpec) -> tuple[PGroup, list[int], list[int]]:
    """(G1 x G2)/<(z1, z2^{-1})>; the images of z1 and z2 coincide.

    Returns (group, embedding of left, embedding of right).
    """
    a, b, za, zb = spec.left, spec.right, int(spec.z_left), int(spec.z_right)
    p = a.p
    for grp, z in ((a, za), (b, zb)):
        if grp.element_order(z) != p:
            raise ValueError("designated central element must have order p")
        arr = np.arange(grp.order)
        if not np.array_equal(grp.mul[z, arr], grp.mul[arr, z]):
            raise ValueError("designated element is not central")
    if a.order * b.order // p > order_cap(p):
        raise ValueError("size cap exceeded")
    prod, emb_a, emb_b = direct_product(a, b)
    zb_inv = b.inv_elem(zb)
    diag = prod.mul_elems(emb_a[za], emb_b[zb_inv])
    kernel = [0]
    x = diag
    while x != 0:
        kernel.append(x)
        x = prod.mul_elems(x, diag)
    quo, proj = quotient_group(prod, kernel)
    quo.label = f"cp({a.label},{b.label})"
    return quo, [int(proj[e]) for e in emb_a], [int(proj[e]) for e in emb_b]


def build_extraspecial(p: int, n: int, family: str) -> PGroup:
    """Iterated central products per family; stores form data in meta.

    family: type1 = D8*...*D8, type2 = D8*...*D8*Q8, type3 = D8*...*D8*C4
    (all p=2), expp = G1*...*G1 (p odd, exponent p).
    """
    if family in ("type1", "type2", "type3"):
        if p != 2:
            raise ValueError(f"{family} requires p = 2")
        d8 = build_dihedral(8)
        # form basis for a D8 factor: two reflections y, xy (both square to 1,
        # commutator z) so that q restricted to the factor is x1*x2
        d8_basis = [4, d8.mul_elems(1, 4)]
        d8_z = 2
        if family == "type1":
            factors = [(d8, d8_basis, d8_z)] * n
        elif family == "type2":
            q8 = build_quaternion(8)
            factors = [(d8, d8_basis, d8_z)] * (n - 1) + [(q8, [1, 4], 2)]
        else:
            c4 = build_cyclic(2, 2)
            factors = [(d8, d8_basis, d8_z)] * n + [(c4, [1], 2)]
        if n < 1:
            raise ValueError("need n >= 1")
    elif family == "expp":
        g1 = build_heisenberg(p)
        factors = [(g1, list(g1.meta["form_basis"]), int(g1.meta["z"]))] * n
    else:
        raise ValueError(f"unknown family {family!r}")

    group, basis, z = factors[0]
    basis = list(basis)
    for nxt, nxt_basis, nxt_z in factors[1:]:
        group, emb_l, emb_r = central_product(
            CentralProductSpec(group, nxt, z, nxt_z)
        )
        basis = [emb_l[x] for x in basis] + [emb_r[x] for x in nxt_basis]
        z = emb_l[z]
    m = 2 * n + (1 if family == "type3" else 0)
    group.label = f"ES({p},{n},{family})"
    group.meta = {"z": z, "form_basis": basis, "family": family, "n": n, "m": m}
    return group


# -- subgroup machinery --


def center(g: PGroup) -> Subgroup:
    central = np.nonzero((g.mul == g.mul.T).all(axis=1))[0]
    return Subgroup(g, central)


def centralizer(g: PGroup, target) -> Subgroup:
    if isinstance(target, Subgroup):
        elems = np.array(target.elements)
    else:
        elems = np.array([int(target)])
    ok = (g.mul[:, elems] == g.mul[elems, :].T).all(axis=1)
    return Subgroup(g, np.nonzero(ok)[0])


def normalizer(g: PGroup, s: Subgroup) -> Subgroup:
    arr = np.array(s.elements)
    inside = np.zeros(g.order, dtype=bool)
    inside[arr] = True
    conj = g.conj_table()[:, arr]
    ok = inside[conj].all(axis=1)
    return Subgroup(g, np.nonzero(ok)[0])


def frattini(g: PGroup) -> Subgroup:
    """Frattini subgroup, computed as <commutators, p-th powers>.

    For p-groups this equals the intersection of the maximal subgroups
    (verified in the test suite by literal intersection).
    """
    seed = set(int(x) for x in g.pth_powers())
    # commutators [a,b] = (a b a^{-1}) b^{-1}
    comms = g.mul[g.conj_table(), g._inv[None, :]]
    seed.update(int(x) for x in np.unique(comms))
    return Subgroup(g, closure_table(g.mul, seed))


def maximal_subgroups(g: PGroup) -> list[Subgroup]:
    """All index-p subgroups: hyperplane preimages modulo the Frattini."""
    p = g.p
    phi = frattini(g)
    quo, proj = quotient_group(g, phi.elements)
    d = 0
    while p**d < quo.order:
        d += 1
    if quo.order != p**d:
        raise AssertionError("Frattini quotient is not elementary abelian")
    if d == 0:
        return []
    # coordinates on quo via a generating basis
    basis = minimal_generating_set_table(quo.mul)
    coords = np.full(quo.order, -1, dtype=np.int64)
    coords[0] = 0
    frontier = [0]
    vec = {0: np.zeros(d, dtype=np.int64)}
    while frontier:
        nxt = []
        for x in frontier:
            for i, b in enumerate(basis):
                y = int(quo.mul[x, b])
                if coords[y] < 0:
                    v = vec[x].copy()
                    v[i] = (v[i] + 1) % p
                    vec[y] = v
                    coords[y] = int(sum(c * p**j for j, c in enumerate(v)))
                    nxt.append(y)
        frontier = nxt
    out = []
    # hyperplanes = kernels of nonzero functionals, one per projective point
    seen = set()
    for a in range(1, p**d):
        digits = tuple((a // p**i) % p for i in range(d))
        first = next(x for x in digits if x)
        if first != 1:
            continue  # normalize the functional projectively
        if digits in seen:
            continue
        seen.add(digits)
        keep = []
        for x in range(quo.order):
            v = vec[x]
            if sum(int(v[i]) * digits[i] for i in range(d)) % p == 0:
                keep.append(x)
        keep_set = set(keep)
        elems = [e for e in range(g.order) if int(proj[e]) in keep_set]
        out.append(Subgroup(g, elems))
    out.sort(key=lambda s: s.elements)
    return out


def elementary_abelian_subgroups(g: PGroup, maximal_only: bool = False) -> list[Subgroup]:
    """All elementary abelian subgroups (or just the inclusion-maximal ones)."""
    p = g.p
    orders = g.element_orders()
    order_p = [int(x) for x in np.nonzero(orders == p)[0]]
    seen = {_mask(g.order, (0,)): (0,)}
    layer = [(0,)]
    while layer:
        nxt = []
        for helems in layer:
            harr = np.array(helems)
            inside = np.zeros(g.order, dtype=bool)
            inside[harr] = True
            for x in order_p:
                if inside[x]:
                    continue
                if not np.array_equal(g.mul[x, harr], g.mul[harr, x]):
                    continue
                new = set(helems)
                y = x
                for _ in range(p - 1):
                    new.update(int(v) for v in g.mul[y, harr])
                    y = g.mul_elems(y, x)
                key = _mask(g.order, new)
                if key not in seen:
                    tup = tuple(sorted(new))
                    seen[key] = tup
                    nxt.append(tup)
        layer = nxt
    subs = [Subgroup(g, t) for t in seen.values()]
    subs.sort(key=lambda s: (s.order, s.elements))
    if maximal_only:
        subs = [
            s
            for s in subs
            if not any(o.order > s.order and s <= o for o in subs)
        ]
    return subs


def _mask(n: int, elems) -> bytes:
    m = np.zeros(n, dtype=bool)
    m[list(elems)] = True
    return np.packbits(m).tobytes()


def all_subgroups(g: PGroup) -> list[Subgroup]:
    """Every subgroup, by the p-group layer algorithm: extend H by
    normalizing elements x with x^p in H (complete since every subgroup
    of a p-group is subnormal)."""
    p = g.p
    powp = g.pth_powers()
    conj = g.conj_table()
    seen = {_mask(g.order, (0,)): (0,)}
    layer = [(0,)]
    while layer:
        nxt = []
        for helems in layer:
            harr = np.array(helems)
            inside = np.zeros(g.order, dtype=bool)
            inside[harr] = True
            normalizes = inside[conj[:, harr]].all(axis=1)
            cands = np.nonzero(normalizes & ~inside & inside[powp])[0]
            for x in cands:
                new = set(helems)
                y = int(x)
                for _ in range(p - 1):
                    new.update(int(v) for v in g.mul[y, harr])
                    y = g.mul_elems(y, int(x))
                key = _mask(g.order, new)
                if key not in seen:
                    tup = tuple(sorted(new))
                    seen[key] = tup
                    nxt.append(tup)
        layer = nxt
    subs = [Subgroup(g, t) for t in seen.values()]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def conjugate_subgroup(g: PGroup, s: Subgroup, x: int) -> tuple:
    return tuple(sorted(int(v) for v in g.conj_table()[x, np.array(s.elements)]))


def conjugacy_classes_of_subgroups(
    g: PGroup, predicate=None, subgroups=None
) -> list[list[Subgroup]]:
    """Orbits of conjugation on the subgroups satisfying the predicate.

    Each orbit is a list of Subgroups; the first entry is the representative
    (lexicographically least element tuple)."""
    if subgroups is None:
        subgroups = all_subgroups(g)
    if predicate is not None:
        subgroups = [s for s in subgroups if predicate(s)]
    conj = g.conj_table()
    pending = dict.fromkeys(s.elements for s in subgroups)
    classes = []
    while pending:
        start = min(pending)
        orbit = {start}
        frontier = [start]
        while frontier:
            arr = np.array(frontier.pop())
            for x in g.generators:
                img = tuple(sorted(int(v) for v in conj[x, arr]))
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        members = [Subgroup._unchecked(g, t) for t in sorted(orbit)]
        for m in members:
            pending.pop(m.elements, None)
        classes.append(members)
    classes.sort(key=lambda c: (c[0].order, c[0].elements))
    return classes


def quotient_order_profile(g: PGroup, n_elems: np.ndarray, h_set: set) -> dict[int, int]:
    """Order profile {element order: count} of N/H without materializing it.

    n_elems must list a subgroup N normalizing H with H <= N; the order of
    the coset xH is the least k with x^k in H, constant on cosets.
    """
    inside = np.zeros(g.order, dtype=bool)
    inside[list(h_set)] = True
    cur = n_elems.copy()
    qord = np.zeros(len(n_elems), dtype=np.int64)
    k = 1
    while np.any(qord == 0):
        hit = inside[cur] & (qord == 0)
        qord[hit] = k
        cur = g.mul[cur, n_elems]
        k += 1
    hsize = len(h_set)
    return {
        int(o): int((qord == o).sum()) // hsize for o in np.unique(qord)
    }


def s_count(g: PGroup) -> int:
    """Number of conjugacy classes of nontrivial cyclic subgroups."""
    orders = g.element_orders()
    cyclics = set()
    for x in range(1, g.order):
        elems = tuple(sorted(g.power(x, k) for k in range(int(orders[x]))))
        cyclics.add(elems)
    classes = conjugacy_classes_of_subgroups(
        g, subgroups=[Subgroup(g, t) for t in sorted(cyclics)]
    )
    return len(classes)


# -- isomorphism-type recognition by invariants --


def invariant_tuple(g: PGroup):
    orders = g.element_orders()
    counts = tuple(
        (int(o), int((orders == o).sum())) for o in sorted(set(int(x) for x in orders))
    )
    return (g.order, g.exponent(), counts, g.is_abelian(), center(g).order)


def isomorphism_type(g: PGroup) -> str:
    """Name the isomorphism type within the families this workbench needs.

    The invariant tuple (order, exponent, order profile, commutativity,
    center size) separates cyclic / elementary abelian / dihedral /
    quaternion / semidihedral at the relevant orders; a proof-by-enumeration
    test pins this down at orders <= 16.
    """
    n, expo, counts, abelian, zorder = invariant_tuple(g)
    if n == 1:
        return "1"
    if expo == n:
        return f"C{n}"
    p = g.p
    if abelian:
        if expo == p:
            r = 0
            m = n
            while m > 1:
                m //= p
                r += 1
            return f"E({p},{r})"
        return f"A{n}"
    if p == 2 and n >= 8:
        invol = dict(counts).get(2, 0)
        if invol == 1 and zorder == 2:
            return f"Q{n}"
        if invol == n // 2 + 1 and zorder == 2:
            return f"D{n}"
        if invol == n // 4 + 1 and zorder == 2 and n >= 16:
            return f"SD{n}"
    return f"G{n}"


def _materialized_quotient_type(g: PGroup, rep: Subgroup, n_sub: Subgroup) -> tuple[str, int]:
    npg, nembed = n_sub.as_pgroup()
    pos = {e: i for i, e in enumerate(nembed)}
    himg = [pos[e] for e in rep.elements]
    quo, _ = quotient_group(npg, himg)
    return isomorphism_type(quo), quo.order


def dade_class_X(g: PGroup) -> list[dict]:
    """Representatives of the class X with their Weyl quotient types.

    For p = 2: subgroups H whose N_G(H)/H is cyclic of order >= 4,
    quaternion of order >= 8, or semi-dihedral of order >= 16.  For odd p:
    subgroups with cyclic N_G(H)/H (the trivial quotient counts as cyclic).
    Cyclic quotients are decided from the coset order profile alone; the
    nonabelian candidates are materialized and classified by invariants.
    """
    conj = g.conj_table()
    inv_col = g._inv[None, :]
    out = []
    for cls in conjugacy_classes_of_subgroups(g):
        rep = cls[0]
        harr = np.array(rep.elements)
        h_set = set(rep.elements)
        inside = np.zeros(g.order, dtype=bool)
        inside[harr] = True
        n_elems = np.nonzero(inside[conj[:, harr]].all(axis=1))[0]
        qsize = len(n_elems) // rep.order
        profile = quotient_order_profile(g, n_elems, h_set)
        max_ord = max(profile)
        is_cyclic = max_ord == qsize
        if g.p != 2:
            if is_cyclic:
                label = "1" if qsize == 1 else f"C{qsize}"
                out.append(
                    {
                        "subgroup": rep,
                        "class_size": len(cls),
                        "quotient_type": label,
                        "quotient_order": qsize,
                    }
                )
            continue
        if is_cyclic:
            if qsize >= 4:
                out.append(
                    {
                        "subgroup": rep,
                        "class_size": len(cls),
                        "quotient_type": f"C{qsize}",
                        "quotient_order": qsize,
                    }
                )
            continue
        if qsize < 8:
            continue
        invol = profile.get(2, 0)
        # quaternion: unique involution; semidihedral 2^k: 2^{k-2}+1 of them
        if invol == 1 or (qsize >= 16 and invol == qsize // 4 + 1):
            qtype, qorder = _materialized_quotient_type(
                g, rep, Subgroup._unchecked(g, tuple(int(x) for x in n_elems))
            )
            if qtype.startswith("Q") or qtype.startswith("SD"):
                out.append(
                    {
                        "subgroup": rep,
                        "class_size": len(cls),
                        "quotient_type": qtype,
                        "quotient_order": qorder,
                    }
                )
    return out


# -- construction-string grammar --


def parse_group_spec(text: str) -> PGroup:
    """Grammar: C(p^n) | E(p,n) | D(2^n) | Q(2^n) | SD(2^n)
    | ES(p,n,type1|type2|type3|expp) | cp(<spec>,<spec>)."""
    s = text.replace(" ", "")
    group, rest = _parse_spec(s)
    if rest:
        raise ValueError(f"trailing characters in group spec: {rest!r}")
    return group


def _parse_spec(s: str):
    for name in ("cp", "ES", "SD", "C", "E", "D", "Q"):
        if s.startswith(name + "("):
            body_start = len(name) + 1
            depth = 1
            i = body_start
            while i < len(s) and depth:
                if s[i] == "(":
                    depth += 1
                elif s[i] == ")":
                    depth -= 1
                i += 1
            if depth:
                raise ValueError("unbalanced parentheses in group spec")
            body, rest = s[body_start : i - 1], s[i:]
            return _build_from_spec(name, body), rest
    raise ValueError(f"cannot parse group spec at {s!r}")


def _factor_prime_power(n: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                raise ValueError("order is not a prime power")
            return p, k
    raise ValueError(f"unsupported order {n}")


def _build_from_spec(name: str, body: str) -> PGroup:
    if name == "cp":
        left, rest = _parse_spec(body)
        if not rest.startswith(","):
            raise ValueError("cp needs two comma-separated specs")
        right, rest = _parse_spec(rest[1:])
        if rest:
            raise ValueError("cp takes exactly two specs")
        zl = _central_order_p_element(left)
        zr = _central_order_p_element(right)
        group, _, _ = central_product(CentralProductSpec(left, right, zl, zr))
        return group
    if name == "C":
        p, k = _factor_prime_power(int(body))
        return build_cyclic(p, k)
    if name == "D":
        return build_dihedral(int(body))
    if name == "Q":
        return build_quaternion(int(body))
    if name == "SD":
        return build_semidihedral(int(body))
    if name == "E":
        p, n = (int(x) for x in body.split(","))
        return build_elementary_abelian(p, n)
    if name == "ES":
        parts = body.split(",")
        if len(parts) != 3:
            raise ValueError("ES needs (p, n, family)")
        return build_extraspecial(int(parts[0]), int(parts[1]), parts[2])
    raise ValueError(f"unknown constructor {name}")


def _central_order_p_element(g: PGroup) -> int:
    if "z" in g.meta:
        return int(g.meta["z"])
    z = center(g)
    orders = g.element_orders()
    for e in z.elements:
        if orders[e] == g.p:
            return int(e)
    raise ValueError("group has no central element of order p")
