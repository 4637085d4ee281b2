import itertools
import random

import pytest

from galcoh.cohomology import enumerate_h1
from galcoh.errors import EnumerationBoundExceeded
from galcoh.gftower import GaloisFieldTower
from galcoh.tensorforms import (
    Tensor,
    TensorFamily,
    apply_to_family,
    apply_to_tensor,
    classify_forms,
    galois_action,
    gl_group,
    gl_order,
    hilbert90_check,
    mat_frob,
    mat_identity,
    mat_inv,
    mat_mul,
    quadratic_form_oracle,
    stabilizer_of_family,
    symmetric_invertible_forms,
)


def tower33():
    return GaloisFieldTower(3, 1, 2)  # F_3 <= F_9


def test_matrix_inverse_roundtrip():
    t = tower33()
    random.seed(3)
    for n in (1, 2, 3):
        count = 0
        while count < 20:
            a = tuple(random.randrange(t.size) for _ in range(n * n))
            from galcoh.tensorforms import mat_det
            if mat_det(t, n, a) == 0:
                continue
            assert mat_mul(t, n, a, mat_inv(t, n, a)) == mat_identity(n)
            count += 1


def test_frobenius_commutes_with_product():
    t = tower33()
    random.seed(5)
    for _ in range(50):
        a = tuple(random.randrange(t.size) for _ in range(4))
        b = tuple(random.randrange(t.size) for _ in range(4))
        assert mat_frob(t, mat_mul(t, 2, a, b)) == mat_mul(
            t, 2, mat_frob(t, a), mat_frob(t, b)
        )


def test_gl_group_order():
    t = tower33()
    g1 = gl_group(t, 1)
    assert len(g1) == 8
    g2 = gl_group(t, 2)
    assert len(g2) == gl_order(9, 2) == 5760


def test_tensor_action_axiom():
    # (gh)(tau) = g(h(tau)) exhaustively at tiny size
    t = GaloisFieldTower(2, 1, 2)  # F_2 <= F_4
    n = 2
    gl = gl_group(t, n)
    tau = Tensor(1, 1, (1, 2, 0, 1))
    random.seed(11)
    els = list(gl.elements)
    for _ in range(40):
        g, h = random.choice(els), random.choice(els)
        lhs = apply_to_tensor(t, n, mat_mul(t, n, g, h), tau)
        rhs = apply_to_tensor(t, n, g, apply_to_tensor(t, n, h, tau))
        assert lhs == rhs


def test_stabilizer_empty_family_is_whole_group():
    t = tower33()
    gl = gl_group(t, 1)
    fam = TensorFamily(1, ())
    assert len(stabilizer_of_family(gl, fam)) == len(gl)


def test_stabilizer_of_x_squared_is_pm1():
    # quadratic form 1*x^2 on a 1-dim space over F_3: stabilizer {g : g^2=1}
    t = tower33()
    gl = gl_group(t, 1)
    fam = TensorFamily(1, (Tensor(2, 0, (1,)),))
    stab = stabilizer_of_family(gl, fam)
    assert len(stab) == 2
    for (g,) in stab.elements:
        assert t.mul(g, g) == 1


def test_stabilizer_of_identity_bilinear_form_f2():
    # bilinear form with identity Gram matrix over F_2, n=2: g^T g = I
    t = GaloisFieldTower(2, 1, 1)
    n = 2
    gl = gl_group(t, n)
    # type (2, 0) tensor: tau(e_i (x) e_j) = delta_ij
    coeffs = tuple(1 if i == j else 0 for i in range(2) for j in range(2))
    fam = TensorFamily(n, (Tensor(2, 0, coeffs),))
    stab = stabilizer_of_family(gl, fam)
    from galcoh.tensorforms import mat_transpose
    expected = [
        g
        for g in gl.elements
        if mat_mul(t, n, mat_transpose(n, g), g) == mat_identity(n)
    ]
    assert sorted(stab.elements) == sorted(expected)


def test_classify_forms_x_squared_two_orbits():
    t = tower33()
    fam = TensorFamily(1, (Tensor(2, 0, (1,)),))
    res = classify_forms(t, fam)
    assert len(res.orbit_reps) == 2
    assert len(res.h1) == 2


def test_classify_forms_empty_family_single_orbit():
    # empty family: H = GL_1, Hilbert 90 forces a single class
    for (p, a, m) in [(2, 1, 2), (3, 1, 2), (2, 2, 2)]:
        t = GaloisFieldTower(p, a, m)
        res = classify_forms(t, TensorFamily(1, ()))
        assert len(res.orbit_reps) == 1


def test_classify_forms_gl_invariant_family():
    # tensor fixed by everything: identity map V -> V (type (1,1))
    t = tower33()
    fam = TensorFamily(1, (Tensor(1, 1, (1,)),))
    res = classify_forms(t, fam)
    assert len(res.orbit_reps) == 1


def test_hilbert90_small_towers():
    assert hilbert90_check(GaloisFieldTower(2, 1, 2), 1) == (True, 1)
    assert hilbert90_check(GaloisFieldTower(3, 1, 2), 1) == (True, 1)


def test_hilbert90_trivial_galois_group():
    assert hilbert90_check(GaloisFieldTower(3, 1, 1), 1) == (True, 1)


def test_hilbert90_matches_generic_enumeration():
    # dual route: dedicated scan vs the generic H^1 machinery
    for (p, a, m, n) in [(2, 1, 2, 1), (3, 1, 2, 1), (2, 1, 2, 2), (2, 1, 3, 1)]:
        t = GaloisFieldTower(p, a, m)
        _, count = hilbert90_check(t, n)
        h1 = enumerate_h1(galois_action(gl_group(t, n)))
        assert count == len(h1) == 1


def test_hilbert90_bound():
    t = GaloisFieldTower(2, 2, 3)  # F_4 <= F_64
    with pytest.raises(EnumerationBoundExceeded):
        hilbert90_check(t, 2)


def test_quadratic_form_oracle_q3_n1():
    t = tower33()
    table = quadratic_form_oracle(t, 1)
    assert len(table.base_classes) == 2
    assert table.buckets == ((0, 1),)
    assert table.h1_orders == (2,)
    assert table.consistent


def test_quadratic_form_oracle_q3_n2():
    t = tower33()
    table = quadratic_form_oracle(t, 2)
    assert table.consistent
    for bucket, h1_order in zip(table.buckets, table.h1_orders):
        assert len(bucket) == h1_order


def test_quadratic_form_oracle_n0():
    t = tower33()
    table = quadratic_form_oracle(t, 0)
    assert table.consistent
    assert len(table.base_classes) == 1


def test_symmetric_forms_count():
    t = tower33()
    # invertible symmetric 1x1 over F_3: {1, 2}
    assert len(symmetric_invertible_forms(t, 1)) == 2
