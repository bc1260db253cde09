import numpy as np
import pytest

from workbench.groups import (
    CentralProductSpec,
    PGroup,
    Subgroup,
    all_subgroups,
    build_cyclic,
    build_dihedral,
    build_elementary_abelian,
    build_extraspecial,
    build_heisenberg,
    build_quaternion,
    build_semidihedral,
    center,
    central_product,
    centralizer,
    conjugacy_classes_of_subgroups,
    dade_class_X,
    direct_product,
    elementary_abelian_subgroups,
    frattini,
    invariant_tuple,
    isomorphism_type,
    maximal_subgroups,
    normalizer,
    parse_group_spec,
    quotient_group,
    s_count,
)


def intersect(a: Subgroup, b: Subgroup) -> set:
    return set(a.elements) & set(b.elements)


def test_seed_groups_validate():
    for g in [
        build_cyclic(2, 3),
        build_cyclic(3, 2),
        build_elementary_abelian(2, 3),
        build_elementary_abelian(3, 2),
        build_dihedral(16),
        build_quaternion(16),
        build_semidihedral(16),
        build_heisenberg(3),
        build_heisenberg(5),
    ]:
        g.validate()


def test_invalid_orders_rejected():
    with pytest.raises(ValueError):
        build_quaternion(4)
    with pytest.raises(ValueError):
        build_semidihedral(8)
    with pytest.raises(ValueError):
        build_dihedral(12)
    with pytest.raises(ValueError):
        build_cyclic(2, 9)  # over the size cap
    with pytest.raises(ValueError):
        build_heisenberg(2)


def test_quaternion_8_has_one_involution():
    q8 = build_quaternion(8)
    assert int((q8.element_orders() == 2).sum()) == 1


def test_cyclic_3():
    g = build_cyclic(3, 1)
    assert g.order == 3
    assert g.exponent() == 3


def test_semidihedral_16_presentation():
    sd = build_semidihedral(16)
    x, y = sd.generators
    assert sd.power(x, 8) == 0
    assert sd.power(y, 2) == 0
    assert sd.conj_elems(y, x) == sd.power(x, 3)


def test_central_product_orders():
    d8 = build_dihedral(8)
    c4 = build_cyclic(2, 2)
    g, el, er = central_product(CentralProductSpec(d8, c4, 2, 2))
    assert g.order == 16  # |D8||C4|/2
    assert el[2] == er[2]  # the two central elements coincide
    gg = build_extraspecial(2, 2, "type1")
    assert gg.order == 32
    assert center(gg).order == 2


def test_central_product_rejects_bad_z():
    d8 = build_dihedral(8)
    with pytest.raises(ValueError):
        central_product(CentralProductSpec(d8, d8, 1, 2))  # order-4 element
    with pytest.raises(ValueError):
        central_product(CentralProductSpec(d8, d8, 4, 2))  # not central


def test_d8d8_isomorphic_invariants_q8q8():
    q8 = build_quaternion(8)
    d8d8 = build_extraspecial(2, 2, "type1")
    q8q8, _, _ = central_product(CentralProductSpec(q8, q8, 2, 2))
    assert invariant_tuple(d8d8) == invariant_tuple(q8q8)
    # same for D8*C4 vs Q8*C4
    d8 = build_dihedral(8)
    c4 = build_cyclic(2, 2)
    a, _, _ = central_product(CentralProductSpec(d8, c4, 2, 2))
    b, _, _ = central_product(CentralProductSpec(q8, c4, 2, 2))
    assert invariant_tuple(a) == invariant_tuple(b)


def test_extraspecial_families():
    es = build_extraspecial(3, 1, "expp")
    assert es.order == 27 and es.exponent() == 3
    q8 = build_extraspecial(2, 1, "type2")
    assert invariant_tuple(q8) == invariant_tuple(build_quaternion(8))
    t3 = build_extraspecial(2, 1, "type3")
    assert t3.order == 16
    for fam, n, order in [("type1", 2, 32), ("type2", 2, 32), ("type3", 2, 64)]:
        g = build_extraspecial(2, n, fam)
        assert g.order == order
        assert frattini(g).order == 2
        quo, _ = quotient_group(g, frattini(g).elements)
        assert quo.exponent() == 2  # G/Phi elementary abelian
        m = g.meta["m"]
        assert quo.order == 2**m


def test_extraspecial_cap():
    with pytest.raises(ValueError):
        build_extraspecial(2, 4, "type1")  # order 512
    with pytest.raises(ValueError):
        build_extraspecial(3, 3, "expp")  # order 3^7


def test_center_and_frattini():
    q8 = build_quaternion(8)
    assert center(q8).order == 2
    es = build_extraspecial(2, 2, "type1")
    assert frattini(es).elements == center(es).elements
    g1 = build_heisenberg(3)
    assert center(g1).order == 3
    assert frattini(g1).elements == center(g1).elements


def test_frattini_is_intersection_of_maximals():
    for g in [build_quaternion(8), build_dihedral(8), build_extraspecial(2, 1, "type3"), build_heisenberg(3)]:
        maxes = maximal_subgroups(g)
        inter = set(range(g.order))
        for s in maxes:
            inter &= set(s.elements)
        assert set(frattini(g).elements) == inter


def test_maximal_subgroup_counts():
    assert len(maximal_subgroups(build_cyclic(2, 2))) == 1
    assert len(maximal_subgroups(build_dihedral(8))) == 3
    # rank of G/Phi = 3 for D8*C4: (2^3-1)/(2-1) = 7
    assert len(maximal_subgroups(build_extraspecial(2, 1, "type3"))) == 7
    assert len(maximal_subgroups(build_heisenberg(3))) == 4
    for s in maximal_subgroups(build_dihedral(8)):
        assert s.index == 2


def test_every_maximal_contains_frattini():
    for g in [build_extraspecial(2, 2, "type2"), build_heisenberg(3)]:
        phi = set(frattini(g).elements)
        for s in maximal_subgroups(g):
            assert phi <= set(s.elements)


def test_elementary_abelian_subgroups():
    d8 = build_dihedral(8)
    maxes = elementary_abelian_subgroups(d8, maximal_only=True)
    assert sorted(s.rank() for s in maxes) == [2, 2]
    assert all(s.index == 2 for s in maxes)
    q8 = build_quaternion(8)
    maxes = elementary_abelian_subgroups(q8, maximal_only=True)
    assert len(maxes) == 1 and maxes[0].rank() == 1 and maxes[0].index == 4
    assert maxes[0].elements == center(q8).elements
    t3 = build_extraspecial(2, 1, "type3")
    assert all(s.index == 4 for s in elementary_abelian_subgroups(t3, maximal_only=True))


def test_min_index_of_max_elem_abelian_matches_h():
    # log2 of the index equals the isotropic-codimension h of Lemma-style data
    expectations = {
        ("type1", 1): 1,
        ("type2", 1): 2,
        ("type3", 1): 2,
        ("type1", 2): 2,
        ("type2", 2): 3,
    }
    for (fam, n), h in expectations.items():
        g = build_extraspecial(2, n, fam)
        idx = min(s.index for s in elementary_abelian_subgroups(g, maximal_only=True))
        assert idx == 2**h, (fam, n)


def test_centralizer_of_noncentral_involution():
    g = build_extraspecial(2, 2, "type1")
    z = g.meta["z"]
    orders = g.element_orders()
    x = next(i for i in range(1, g.order) if orders[i] == 2 and i != z)
    c = centralizer(g, x)
    assert c.order == g.order // 2
    # H is isomorphic to C2 x (group of previous rank) by invariants
    hp, _ = c.as_pgroup()
    c2 = build_cyclic(2, 1)
    d8 = build_dihedral(8)
    ref, _, _ = direct_product(c2, d8)
    assert invariant_tuple(hp) == invariant_tuple(ref)


def test_normalizer_and_conjugacy():
    d8 = build_dihedral(8)
    refl = Subgroup(d8, [0, 4])
    n = normalizer(d8, refl)
    assert n.order == 4
    classes = conjugacy_classes_of_subgroups(d8)
    total = sum(len(c) for c in classes)
    assert total == len(all_subgroups(d8)) == 10
    # orbit sizes partition the subgroup count
    by_pred = conjugacy_classes_of_subgroups(d8, predicate=lambda s: s.order == 2)
    assert sum(len(c) for c in by_pred) == 5


def test_s_count():
    assert s_count(build_cyclic(3, 1)) == 1
    assert s_count(build_cyclic(3, 2)) == 2
    assert s_count(build_quaternion(8)) == 4  # <z>, 3 classes of C4


def test_noncentral_order2_classes():
    t3 = build_extraspecial(2, 1, "type3")
    z = t3.meta["z"]
    classes = conjugacy_classes_of_subgroups(
        t3, predicate=lambda s: s.order == 2 and z not in s.elements
    )
    assert len(classes) == 3
    t2 = build_extraspecial(2, 2, "type2")
    z = t2.meta["z"]
    classes = conjugacy_classes_of_subgroups(
        t2, predicate=lambda s: s.order == 2 and z not in s.elements
    )
    assert len(classes) == 5


def test_isomorphism_type_enumeration_proof():
    # the invariant tuple separates the families at orders <= 16
    reps = {
        "C8": build_cyclic(2, 3),
        "C16": build_cyclic(2, 4),
        "E(2,3)": build_elementary_abelian(2, 3),
        "E(2,4)": build_elementary_abelian(2, 4),
        "D8": build_dihedral(8),
        "D16": build_dihedral(16),
        "Q8": build_quaternion(8),
        "Q16": build_quaternion(16),
        "SD16": build_semidihedral(16),
        "C4": build_cyclic(2, 2),
    }
    tuples = {}
    for name, g in reps.items():
        assert isomorphism_type(g) == name
        t = invariant_tuple(g)
        assert t not in tuples, f"{name} collides with {tuples.get(t)}"
        tuples[t] = name


def test_dade_class_X_examples():
    t3 = build_extraspecial(2, 1, "type3")
    x = dade_class_X(t3)
    assert len(x) == 3
    assert all(d["quotient_type"] == "C4" for d in x)
    # N_G(S_i) = S_i x C4
    for d in x:
        assert normalizer(t3, d["subgroup"]).order == 8

    t2 = build_extraspecial(2, 2, "type2")
    x = dade_class_X(t2)
    assert len(x) == 5
    assert all(d["quotient_type"] == "Q8" for d in x)

    assert dade_class_X(build_extraspecial(2, 1, "type1")) == []
    assert dade_class_X(build_extraspecial(2, 2, "type1")) == []


def test_quotient_group_projection():
    q8 = build_quaternion(8)
    z = center(q8)
    quo, proj = quotient_group(q8, z.elements)
    assert quo.order == 4
    assert quo.exponent() == 2  # Q8/Z is Klein four
    assert proj[0] == 0


def test_subgroup_as_pgroup_roundtrip():
    g = build_extraspecial(2, 1, "type3")
    for s in maximal_subgroups(g)[:3]:
        sub, embed = s.as_pgroup()
        sub.validate()
        assert sub.order == s.order
        for i in range(sub.order):
            for j in range(sub.order):
                assert embed[sub.mul_elems(i, j)] == g.mul_elems(embed[i], embed[j])


def test_parse_group_spec():
    assert parse_group_spec("C(8)").order == 8
    assert parse_group_spec("E(3,2)").order == 9
    assert parse_group_spec("Q(8)").order == 8
    assert parse_group_spec("SD(16)").order == 16
    assert parse_group_spec("ES(2,1,type3)").order == 16
    g = parse_group_spec("cp(D(8),C(4))")
    assert g.order == 16
    assert invariant_tuple(g) == invariant_tuple(parse_group_spec("ES(2,1,type3)"))
    with pytest.raises(ValueError):
        parse_group_spec("F(8)")
    with pytest.raises(ValueError):
        parse_group_spec("C(8)x")
    with pytest.raises(ValueError):
        parse_group_spec("C(12)")


def test_central_product_order_law():
    d8 = build_dihedral(8)
    q8 = build_quaternion(8)
    for a, b in [(d8, d8), (d8, q8), (q8, q8)]:
        g, _, _ = central_product(CentralProductSpec(a, b, 2, 2))
        assert g.order == a.order * b.order // 2


def test_extraspecial_center_and_frattini_orders():
    # extraspecial: |Z| = p = |Phi|; almost extraspecial (type3): |Z| = 4,
    # |Phi| = 2 (the spec glossary's "Phi of order 2 inside a center of
    # order 4")
    for fam, n, zorder in [
        ("type1", 1, 2),
        ("type2", 1, 2),
        ("type1", 2, 2),
        ("type2", 2, 2),
        ("type3", 1, 4),
        ("type3", 2, 4),
    ]:
        g = build_extraspecial(2, n, fam)
        assert center(g).order == zorder, (fam, n)
        assert frattini(g).order == 2, (fam, n)
    g = build_extraspecial(3, 1, "expp")
    assert center(g).order == 3 and frattini(g).order == 3


def test_extraspecial_gmod_phi_rank():
    for fam, n in [("type1", 2), ("type2", 2), ("type3", 2), ("type1", 3)]:
        g = build_extraspecial(2, n, fam)
        quo, _ = quotient_group(g, frattini(g).elements)
        m = g.meta["m"]
        assert quo.order == 2**m
        assert quo.exponent() == 2 and quo.is_abelian()


def test_expp_n2_at_p3_cap():
    g = build_extraspecial(3, 2, "expp")
    assert g.order == 243
    assert center(g).order == 3
    assert frattini(g).elements == center(g).elements
    quo, _ = quotient_group(g, frattini(g).elements)
    assert quo.order == 81 and quo.exponent() == 3


def test_centralizer_of_subgroup():
    d8 = build_dihedral(8)
    z = center(d8)
    assert centralizer(d8, z).order == 8
    refl = Subgroup(d8, [0, 4])
    assert centralizer(d8, refl).order == 4


def test_centralizer_in_order_128_group():
    g = build_extraspecial(2, 3, "type1")
    z = g.meta["z"]
    orders = g.element_orders()
    x = next(i for i in range(1, g.order) if orders[i] == 2 and i != z)
    c = centralizer(g, x)
    assert c.order == 64
    hp, _ = c.as_pgroup()
    c2 = build_cyclic(2, 1)
    u = build_extraspecial(2, 2, "type1")
    ref, _, _ = direct_product(c2, u)
    assert invariant_tuple(hp) == invariant_tuple(ref)


def test_central_product_constructions_validate():
    for spec in [(2, 2, "type1"), (2, 2, "type2"), (2, 2, "type3"), (2, 3, "type1"), (3, 2, "expp")]:
        g = build_extraspecial(*spec)
        g.validate()


def test_max_elem_abelian_index_order_128():
    g = build_extraspecial(2, 3, "type1")  # h = n = 3
    idx = min(s.index for s in elementary_abelian_subgroups(g, maximal_only=True))
    assert idx == 2**3
