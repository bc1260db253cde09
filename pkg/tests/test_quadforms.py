import itertools

import pytest

from workbench.ff import FieldSpec
from workbench.groups import build_extraspecial
from workbench.quadforms import (
    QuadraticForm,
    bilinear,
    bilinear_extended,
    bilinear_values_from_group,
    cyclic_pprime_bound,
    form_of_group,
    form_values_from_group,
    max_isotropic_codim,
    orthogonal_group_order,
    q_eval,
    q_eval_extended,
    regular_sequence_values,
    symplectic_group_order,
)

F4 = FieldSpec(2, 2)


def test_family_validation():
    with pytest.raises(ValueError):
        QuadraticForm(3, "type1")
    with pytest.raises(ValueError):
        QuadraticForm(4, "type3")
    with pytest.raises(ValueError):
        QuadraticForm(4, "type9")


def test_q_zero_everywhere():
    for q in (QuadraticForm(4, "type1"), QuadraticForm(4, "type2"), QuadraticForm(5, "type3")):
        assert q_eval(q, (0,) * q.m) == 0


def test_type2_m2_anisotropic():
    q = QuadraticForm(2, "type2")
    assert [q_eval(q, v) for v in ((1, 0), (0, 1), (1, 1))] == [1, 1, 1]


def test_type1_m4_values():
    q = QuadraticForm(4, "type1")
    assert q_eval(q, (1, 1, 0, 0)) == 1
    assert q_eval(q, (1, 0, 1, 0)) == 0


def test_bilinear_is_symmetric_alternating():
    for q in (QuadraticForm(4, "type1"), QuadraticForm(4, "type2"), QuadraticForm(5, "type3")):
        vecs = list(itertools.product(range(2), repeat=q.m))
        for x in vecs:
            assert bilinear(q, x, x) == 0
        for x, y in itertools.product(vecs[:8], repeat=2):
            assert bilinear(q, x, y) == bilinear(q, y, x)
            s = tuple(a ^ b for a, b in zip(x, y))
            assert q_eval(q, s) == q_eval(q, x) ^ q_eval(q, y) ^ bilinear(q, x, y)


def test_max_isotropic_codim_table():
    assert max_isotropic_codim(QuadraticForm(2, "type1")) == 1  # D8
    assert max_isotropic_codim(QuadraticForm(2, "type2")) == 2  # Q8
    assert max_isotropic_codim(QuadraticForm(3, "type3")) == 2  # D8*C4
    assert max_isotropic_codim(QuadraticForm(4, "type1")) == 2
    assert max_isotropic_codim(QuadraticForm(4, "type2")) == 3
    assert max_isotropic_codim(QuadraticForm(5, "type3")) == 3
    assert max_isotropic_codim(QuadraticForm(6, "type1")) == 3
    with pytest.raises(ValueError):
        max_isotropic_codim(QuadraticForm(14, "type1"))


def test_regular_sequence_values_f2_vector():
    q = QuadraticForm(4, "type1")
    vals = regular_sequence_values(q, F4, [1, 1, 0, 0], 2)
    assert vals[0] == 1  # q(nu) over the prime subfield
    assert vals[1:] == [0]  # F fixes F_2, and b(nu, nu) = 0


def test_regular_sequence_values_f4():
    q = QuadraticForm(2, "type1")
    w = 2
    vals = regular_sequence_values(q, F4, [1, w], 2)
    assert vals == [w, 1]  # q = w; b((1,w),(1,w^2)) = w^2 + w = 1


def test_regular_sequence_vanishing_locus_nonempty():
    # the common zero locus over F_{2^h} meets a maximal elementary abelian
    for q, h in [(QuadraticForm(2, "type1"), 1), (QuadraticForm(4, "type1"), 2)]:
        field = FieldSpec(2, max(h, 2))
        hits = []
        for nu in itertools.product(range(field.q), repeat=q.m):
            if not any(nu):
                continue
            if all(v == 0 for v in regular_sequence_values(q, field, nu, h)):
                hits.append(nu)
        assert hits


def test_group_form_consistency_exhaustive():
    cases = [
        ((2, 1, "type1"), 1),
        ((2, 1, "type2"), 2),
        ((2, 1, "type3"), 2),
        ((2, 2, "type1"), 2),
        ((2, 2, "type2"), 3),
        ((2, 2, "type3"), 3),
    ]
    for spec, h in cases:
        g = build_extraspecial(*spec)
        q = form_of_group(g)
        got_q = form_values_from_group(g)
        assert got_q == {bits: q_eval(q, bits) for bits in got_q}, spec
        got_b = bilinear_values_from_group(g)
        for (x, y), val in got_b.items():
            assert val == bilinear(q, x, y), (spec, x, y)
        assert max_isotropic_codim(q) == h, spec


def test_all_lifts_square_consistently():
    g = build_extraspecial(2, 1, "type3")
    z = g.meta["z"]
    basis = g.meta["form_basis"]
    q = form_of_group(g)
    for v in range(1, 2 ** len(basis)):
        bits = tuple((v >> k) & 1 for k in range(len(basis)))
        lift = 0
        for b, bit in zip(basis, bits):
            if bit:
                lift = g.mul_elems(lift, b)
        for other in (lift, g.mul_elems(lift, z)):  # both lifts of the coset
            sq = g.mul_elems(other, other)
            assert sq == (z if q_eval(q, bits) else 0)


def test_orthogonal_group_orders():
    assert orthogonal_group_order("type1", 1) == 2
    assert orthogonal_group_order("type2", 1) == 6
    assert orthogonal_group_order("type1", 2) == 72
    assert orthogonal_group_order("type2", 2) == 120
    assert orthogonal_group_order("type3", 2) == 720  # Sp(4, F_2)


def test_symplectic_orders():
    assert symplectic_group_order(3, 1) == 24  # p(p^2 - 1)
    assert symplectic_group_order(3, 2) == 51840
    assert symplectic_group_order(2, 2) == 720


def test_two_part_of_orders():
    # v_2(|O^pm(2n, 2)|) = n(n-1) + 1 and v_p(|Sp(2n, p)|) = n^2
    for fam in ("type1", "type2"):
        for n in range(1, 7):
            v = 0
            o = orthogonal_group_order(fam, n)
            while o % 2 == 0:
                o //= 2
                v += 1
            assert v == n * (n - 1) + 1, (fam, n)
    for p in (3, 5, 7):
        for n in range(1, 5):
            v = 0
            o = symplectic_group_order(p, n)
            while o % p == 0:
                o //= p
                v += 1
            assert v == n * n


def test_cyclic_pprime_bound():
    assert cyclic_pprime_bound(3, 2) == 16
    assert cyclic_pprime_bound(2, 4) == 81
