import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermikit.arith import (
    CycNum,
    FieldDisc,
    FieldElem,
    FourierIndex,
    HermMatrix,
    Mat,
)

DISCS = [-3, -4, -7, -8, -11]

st_rat = st.fractions(min_value=-40, max_value=40, max_denominator=8)


def felem(K, a, b=0):
    return K(Fraction(a), Fraction(b))


def test_field_disc_validation():
    with pytest.raises(ValueError):
        FieldDisc(5)
    with pytest.raises(ValueError):
        FieldDisc(-5)
    for D in DISCS:
        FieldDisc(D)


def test_conj_examples():
    K = FieldDisc(-4)
    assert K(1).conj() == K(1)
    # omega + conj(omega) = D
    assert K.omega.conj() == K(-4, -1)
    x = K(Fraction(3, 2), 5)
    assert x.conj().conj() == x


def test_trace_norm_examples():
    K = FieldDisc(-4)
    assert K(1).trace() == 2 and K(1).norm() == 1
    assert K.omega.trace() == -4 and K.omega.norm() == 5
    assert FieldDisc(-3).omega.norm() == 3


@given(a=st_rat, b=st_rat, c=st_rat, d=st_rat, D=st.sampled_from(DISCS))
def test_field_ring_laws(a, b, c, d, D):
    K = FieldDisc(D)
    x, y = K(a, b), K(c, d)
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() >= 0
    assert (x.norm() == 0) == x.is_zero()
    if not y.is_zero():
        assert (x / y) * y == x


def test_in_inverse_different():
    K = FieldDisc(-4)
    for a, b in [(1, 0), (0, 1), (3, -2)]:
        assert K(a, b).in_inverse_different()
    assert K(Fraction(1, 2)).in_inverse_different()
    assert not K(Fraction(1, 3)).in_inverse_different()
    # the advertised basis really generates the inverse different
    for D in DISCS:
        F = FieldDisc(D)
        b1, b2 = F.inv_different_basis()
        assert b1.in_inverse_different() and b2.in_inverse_different()
        # index [D_F^-1 : O_F] = |D|
        det = b1.a * b2.b - b1.b * b2.a
        assert abs(Fraction(1) / det) == abs(D)


def test_cyc_basics():
    one = CycNum.from_rational(1)
    assert (CycNum.root_of_unity(0) + CycNum.root_of_unity(Fraction(1, 2))).is_zero()
    assert (one + CycNum.root_of_unity(Fraction(1, 3)) + CycNum.root_of_unity(Fraction(2, 3))).is_zero()
    e4 = CycNum.root_of_unity(Fraction(1, 4))
    assert e4 * e4 == CycNum.root_of_unity(Fraction(1, 2))


@given(
    phases=st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=1, max_size=4),
    coeffs=st.lists(st_rat, min_size=1, max_size=4),
)
def test_cyc_self_difference(phases, coeffs):
    x = CycNum(list(zip(phases, coeffs)))
    assert (x - x).is_zero()


@given(p=st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda q: q < 1))
def test_cyc_single_root_never_zero(p):
    assert not CycNum.root_of_unity(p).is_zero()


def test_cyc_complex_embedding_consistency():
    x = CycNum([(Fraction(1, 5), Fraction(2)), (Fraction(3, 7), Fraction(-1, 2))])
    z = complex(x)
    import cmath

    expected = 2 * cmath.exp(2j * cmath.pi / 5) - 0.5 * cmath.exp(2j * cmath.pi * 3 / 7)
    assert abs(z - expected) < 1e-12


def test_dual_membership_examples():
    K = FieldDisc(-4)
    assert HermMatrix.identity(2, -4).is_dual_member(1)
    half = K(Fraction(1, 2))
    t = HermMatrix.from_entries([[K(1), half], [half, K(1)]], -4)
    assert t.is_dual_member(1)
    bad = HermMatrix.from_entries([[Fraction(1, 2), 0], [0, 0]], -4)
    assert not bad.is_dual_member(1)


def test_psd_pd_examples():
    K = FieldDisc(-4)
    eye = HermMatrix.identity(2, -4)
    assert eye.is_pd() and eye.is_psd()
    t = HermMatrix.from_entries([[1, 0], [0, 0]], -4)
    assert t.is_psd() and not t.is_pd()
    w = K.omega
    t2 = HermMatrix.from_entries([[K(2), w], [w.conj(), K(2)]], -4)
    assert not t2.is_psd()


def _random_herm(rng, K, g, span=4):
    rows = [[None] * g for _ in range(g)]
    for i in range(g):
        rows[i][i] = K(rng.randint(-span, span))
        for j in range(i + 1, g):
            x = K(Fraction(rng.randint(-span, span), rng.randint(1, 3)),
                  Fraction(rng.randint(-span, span), rng.randint(1, 3)))
            rows[i][j] = x
            rows[j][i] = x.conj()
    return HermMatrix(Mat(rows, K.D))


def _embed_complex(t):
    """Float image of a Hermitian matrix under the standard embedding."""
    import math

    D = t.D
    om = complex(D / 2, math.sqrt(-D) / 2)
    return np.array(
        [[complex(t[i, j].a) + complex(t[i, j].b) * om for j in range(t.g)] for i in range(t.g)]
    )


def test_psd_matches_float_eigenvalue_oracle():
    rng = random.Random(7)
    checked = 0
    while checked < 500:
        D = rng.choice(DISCS)
        K = FieldDisc(D)
        g = rng.randint(1, 3)
        t = _random_herm(rng, K, g)
        z = _embed_complex(t)
        if abs(np.linalg.det(z)) <= 1e-6:
            continue
        eigs = np.linalg.eigvalsh(z)
        assert t.is_psd() == bool(eigs.min() > -1e-9), (t, eigs)
        checked += 1


def test_act_examples_and_functoriality():
    rng = random.Random(11)
    K = FieldDisc(-4)
    eye = HermMatrix.identity(2, -4)
    assert eye.act(Mat.identity(2, -4)) == eye
    u = Mat([[K.one, K.one], [K.zero, K.one]], -4)
    assert eye.act(u) == HermMatrix.from_entries([[1, 1], [1, 2]], -4)
    for _ in range(50):
        t = _random_herm(rng, K, 2)
        u1 = Mat([[K(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(2)] for _ in range(2)], -4)
        u2 = Mat([[K(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(2)] for _ in range(2)], -4)
        assert t.act(u1).act(u2) == t.act(u1 * u2)


def test_dual_lattice_gl_stability():
    rng = random.Random(3)
    for D in DISCS:
        K = FieldDisc(D)
        b1, b2 = K.inv_different_basis()
        for _ in range(40):
            g = rng.randint(1, 2)
            rows = [[None] * g for _ in range(g)]
            for i in range(g):
                rows[i][i] = K(rng.randint(-3, 3))
                for j in range(i + 1, g):
                    x = rng.randint(-2, 2) * b1 + rng.randint(-2, 2) * b2
                    rows[i][j] = x
                    rows[j][i] = x.conj()
            t = HermMatrix(Mat(rows, D))
            assert t.is_dual_member(1)
            u = _random_unimodular(rng, K, g)
            assert t.act(u).is_dual_member(1)


def _random_unimodular(rng, K, g):
    u = Mat.identity(g, K.D)
    for _ in range(4):
        i, j = rng.randrange(g), rng.randrange(g)
        if i == j:
            continue
        e = [[K.one if a == b else K.zero for b in range(g)] for a in range(g)]
        e[i][j] = K(rng.randint(-1, 1), rng.randint(-1, 1))
        u = u * Mat(e, K.D)
    return u


def test_trace_form_symmetric_rational():
    rng = random.Random(5)
    K = FieldDisc(-7)
    for _ in range(30):
        x = _random_herm(rng, K, 2)
        y = _random_herm(rng, K, 2)
        assert x.trace_pair(y) == y.trace_pair(x)


def test_block_decompose():
    K = FieldDisc(-4)
    x = K(0, 1)
    t = HermMatrix.from_entries([[K(1), x.conj()], [x, K(3)]], -4)
    n, r, m = t.block_decompose(1)
    assert n.diagonal() == (Fraction(1),)
    assert m.diagonal() == (Fraction(3),)
    assert r[0, 0] == x
    n0, r0, m0 = t.block_decompose(0)
    assert n0 == t and m0.g == 0
    n2, r2, m2 = t.block_decompose(2)
    assert m2 == t and n2.g == 0
    assert HermMatrix.from_blocks(n, r, m) == t
    with pytest.raises(ValueError):
        t.block_decompose(3)


def test_fourier_index():
    t = HermMatrix.from_entries([[Fraction(1, 2), 0], [0, 1]], -4)
    assert not FourierIndex(t, 1).is_valid()
    assert FourierIndex(t, 2).is_valid()
