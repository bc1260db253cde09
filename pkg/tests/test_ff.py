import itertools
import random

import numpy as np
import pytest

from workbench.ff import (
    FFMatrix,
    FieldSpec,
    PINNED_MODULI,
    _poly_is_irreducible,
    inverse,
    kernel_basis,
    kron,
    lexleast_irreducible,
    rank,
    rref,
    solve,
    solve_commutant,
)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F4 = FieldSpec(2, 2)


def random_matrix(field, rows, cols, rng):
    return FFMatrix(field, rng.integers(0, field.q, size=(rows, cols)))


def c3_regular_generator():
    # regular representation of a generator of C3 over F3 (cyclic shift)
    return FFMatrix(F3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_pinned_moduli_are_irreducible_and_lexleast():
    for (p, e), m in PINNED_MODULI.items():
        assert _poly_is_irreducible(list(m), p)
        assert lexleast_irreducible(p, e) == m


def test_bad_fields_rejected():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(17)
    with pytest.raises(ValueError):
        FieldSpec(2, 5)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, modulus=(1, 0, 1))  # w^2+1 = (w+1)^2 over F2


def test_field_axioms_exhaustive_small():
    # every field with p^e <= 16 gets the full table treatment
    for p, e in [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (3, 2), (2, 4)]:
        f = FieldSpec(p, e)
        if f.q > 16:
            continue
        elems = range(f.q)
        for a, b in itertools.product(elems, repeat=2):
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            assert f.add(a, f.neg(a)) == 0
            if a:
                assert f.mul(a, f.inv(a)) == 1
        for a, b, c in itertools.product(elems, repeat=3):
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_field_axioms_randomized_large():
    rng = random.Random(7)
    for p, e in [(3, 3), (5, 2), (7, 2), (13, 4), (11, 3)]:
        f = FieldSpec(p, e)
        for _ in range(200):
            a, b, c = (rng.randrange(f.q) for _ in range(3))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            if a:
                assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, f.q) == a  # Frobenius has order e


def test_frobenius_fixes_prime_subfield():
    f = FieldSpec(2, 3)
    assert f.frobenius(0) == 0 and f.frobenius(1) == 1
    w = 2
    assert f.frobenius(w) == f.mul(w, w)


def test_elem_str_round_trip():
    f = FieldSpec(2, 3)
    for a in range(f.q):
        assert f.parse_elem(f.elem_str(a)) == a


def test_field_element_operators():
    f = FieldSpec(3, 2)
    x = f.elem(5)
    y = f.elem(7)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * 0 == f.elem(0)
    assert (x**2) == x * x
    assert f.elem(4).coeffs == (1, 1)


def test_rref_identity():
    eye = FFMatrix.identity(F2, 3)
    red, pivots = rref(eye)
    assert red == eye
    assert pivots == (0, 1, 2)


def test_rref_zero():
    z = FFMatrix.zeros(F3, 2, 4)
    red, pivots = rref(z)
    assert red == z
    assert pivots == ()


def test_rref_c3_jordan_rank():
    # (u - 1) for u the regular rep of a C3 generator: nilpotent of order 3
    d = c3_regular_generator() - FFMatrix.identity(F3, 3)
    assert rank(d) == 2
    assert rank(d @ d) == 1
    assert rank(d @ d @ d) == 0


def test_rref_idempotent():
    rng = np.random.default_rng(11)
    for field in (F2, F3, F4):
        for _ in range(25):
            m = random_matrix(field, rng.integers(1, 6), rng.integers(1, 6), rng)
            red, piv = rref(m)
            red2, piv2 = rref(red)
            assert red2 == red and piv2 == piv


def test_kernel_identity_and_zero():
    assert kernel_basis(FFMatrix.identity(F2, 4)) == []
    kb = kernel_basis(FFMatrix.zeros(F3, 3, 3))
    assert len(kb) == 3
    assert sorted(tuple(v) for v in kb) == sorted(
        ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    )


def test_kernel_c3_squared_brute_force():
    d = c3_regular_generator() - FFMatrix.identity(F3, 3)
    d2 = d @ d
    # oracle: brute force over all 27 vectors of F3^3
    killed = [
        v
        for v in itertools.product(range(3), repeat=3)
        if all(
            sum(d2.a[i, j] * v[j] for j in range(3)) % 3 == 0 for i in range(3)
        )
    ]
    assert len(killed) == 3**2
    assert len(kernel_basis(d2)) == 2


def test_rank_nullity_randomized():
    rng = np.random.default_rng(23)
    for field in (F2, F3, F4, FieldSpec(5), FieldSpec(2, 3), FieldSpec(3, 2)):
        for _ in range(30):
            m = random_matrix(field, rng.integers(1, 7), rng.integers(1, 7), rng)
            assert rank(m) + len(kernel_basis(m)) == m.cols
            for v in kernel_basis(m):
                prod = m @ FFMatrix(field, v.reshape(-1, 1))
                assert not prod.a.any()


def test_kron_identities():
    assert kron(FFMatrix.identity(F2, 2), FFMatrix.identity(F2, 3)) == FFMatrix.identity(F2, 6)
    rng = np.random.default_rng(5)
    m = random_matrix(F3, 3, 2, rng)
    assert kron(m, FFMatrix.identity(F3, 1)) == m
    assert kron(FFMatrix.identity(F3, 1), m) == m


def test_kron_mixed_product_f4():
    rng = np.random.default_rng(17)
    for _ in range(20):
        a, b, c, d = (random_matrix(F4, 2, 2, rng) for _ in range(4))
        assert (kron(a, b) @ kron(c, d)) == kron(a @ c, b @ d)


def test_kron_associative():
    rng = np.random.default_rng(29)
    a = random_matrix(F2, 2, 3, rng)
    b = random_matrix(F2, 2, 2, rng)
    c = random_matrix(F2, 3, 1, rng)
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


def test_matmul_matches_schoolbook_extension_field():
    rng = np.random.default_rng(31)
    f = FieldSpec(3, 2)
    a = random_matrix(f, 3, 4, rng)
    b = random_matrix(f, 4, 2, rng)
    prod = a @ b
    for i in range(3):
        for j in range(2):
            acc = 0
            for k in range(4):
                acc = f.add(acc, f.mul(int(a.a[i, k]), int(b.a[k, j])))
            assert prod.a[i, j] == acc


def test_solve_and_inverse():
    rng = np.random.default_rng(37)
    for field in (F2, F3, F4):
        for _ in range(20):
            n = int(rng.integers(1, 5))
            m = random_matrix(field, n, n, rng)
            if rank(m) < n:
                with pytest.raises(ValueError):
                    inverse(m)
                continue
            assert (m @ inverse(m)).is_identity()
            b = random_matrix(field, n, 2, rng)
            x = solve(m, b)
            assert (m @ x) == b


def test_solve_inconsistent_raises():
    a = FFMatrix(F2, [[1, 0], [1, 0]])
    b = FFMatrix(F2, [[1], [0]])
    with pytest.raises(ValueError):
        solve(a, b)


def test_commutant_identity_gens_full_space():
    eye = FFMatrix.identity(F2, 2)
    basis = solve_commutant([eye], [eye])
    assert len(basis) == 4


def test_commutant_trivial_vs_regular_c2():
    # oracle: enumerate all 2x1 matrices over F2 and test the intertwiner law
    triv = FFMatrix(F2, [[1]])
    reg = FFMatrix(F2, [[0, 1], [1, 0]])
    expected = [
        x
        for x in itertools.product(range(2), repeat=2)
        if all(
            (reg.a @ np.array(x) % 2 == np.array(x) * 1).all() for _ in [0]
        )
    ]
    # X (2x1) with X*1 = reg*X, i.e. X fixed by reg: only (0,0) and (1,1)
    assert len(expected) == 2
    basis = solve_commutant([triv], [reg])
    assert len(basis) == 1
    v = basis[0]
    assert ((reg @ v) - v).a.any() == False


def test_commutant_endomorphisms_regular_c2():
    reg = FFMatrix(F2, [[0, 1], [1, 0]])
    basis = solve_commutant([reg], [reg])
    assert len(basis) == 2  # kC2 is 2-dimensional commutative
    for x in basis:
        assert (x @ reg) == (reg @ x)


def test_matrix_power():
    u = c3_regular_generator()
    assert (u**3).is_identity()
    assert (u**-1) == u @ u
