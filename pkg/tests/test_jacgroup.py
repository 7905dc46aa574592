import random
from fractions import Fraction

import pytest

from hermikit.jacgroup import (
    HeisElem,
    JacElem,
    TorsionPoint,
    central,
    conj_by_sl2,
    embed_sl2,
    heis_mul,
    jac_mul,
    tp_act,
    tp_enumerate,
    tp_is_member,
    transJ,
)

S = [[0, -1], [1, 0]]
T = [[1, 1], [0, 1]]


def rand_vec(rng, h, den=4, span=6):
    return [Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(h)]


def rand_heis(rng, h):
    lam, mu = rand_vec(rng, h), rand_vec(rng, h)
    # kappa = antisymmetric + symmetric - mu lam^T keeps the constraint
    sym = [[Fraction(0)] * h for _ in range(h)]
    for i in range(h):
        for j in range(i, h):
            sym[i][j] = sym[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    kappa = [[sym[i][j] - mu[i] * lam[j] for j in range(h)] for i in range(h)]
    return HeisElem.make(lam, mu, kappa)


def rand_sl2(rng, span=5):
    # random integer SL2 via products of generators
    m = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, 6)):
        g = rng.choice([S, T, [[1, 0], [1, 1]]])
        m = [[sum(m[i][k] * g[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return m


def test_heis_identity_and_example():
    e = HeisElem.identity(1)
    x = HeisElem.make([1], [0], [[0]])
    y = HeisElem.make([0], [1], [[0]])
    assert x * e == x and e * x == x
    assert x * y == HeisElem.make([1], [1], [[1]])
    assert y * x == HeisElem.make([1], [1], [[-1]])


def test_heis_constraint_enforced():
    with pytest.raises(ValueError):
        HeisElem.make([1, 0], [0, 0], [[0, 1], [0, 0]])


@pytest.mark.parametrize("h", [1, 2, 3])
def test_heis_group_axioms(h):
    rng = random.Random(100 + h)
    for _ in range(200):
        x, y, z = (rand_heis(rng, h) for _ in range(3))
        assert heis_mul(heis_mul(x, y), z) == heis_mul(x, heis_mul(y, z))
        assert x * x.inverse() == HeisElem.identity(h)
        assert x.inverse() * x == HeisElem.identity(h)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_sl2_action_is_automorphism(h):
    rng = random.Random(200 + h)
    for _ in range(100):
        x, y = rand_heis(rng, h), rand_heis(rng, h)
        g = rand_sl2(rng)
        lhs = x.sl2_act(g) * y.sl2_act(g)
        rhs = (x * y).sl2_act(g)
        assert lhs == rhs


@pytest.mark.parametrize("h", [1, 2, 3])
def test_jac_group_axioms(h):
    rng = random.Random(300 + h)
    e = JacElem.identity(h)
    for _ in range(200):
        a = JacElem.make(rand_sl2(rng), rand_heis(rng, h))
        b = JacElem.make(rand_sl2(rng), rand_heis(rng, h))
        c = JacElem.make(rand_sl2(rng), rand_heis(rng, h))
        assert jac_mul(jac_mul(a, b), c) == jac_mul(a, jac_mul(b, c))
        assert a * e == a and e * a == a
        assert a * a.inverse() == e


def test_jac_semidirect_splitting():
    rng = random.Random(17)
    for h in (1, 2):
        hh = rand_heis(rng, h)
        g = rand_sl2(rng)
        lhs = embed_sl2(g, h) * JacElem.identity(h).make([[1, 0], [0, 1]], hh)
        assert lhs.gamma == tuple(tuple(Fraction(x) for x in r) for r in g)
        assert lhs.heis == hh


def test_transJ():
    assert transJ([0], [0]) == JacElem.identity(1)
    t = transJ([1], [1])
    assert t.heis == HeisElem.make([1], [1], [[1]])


@pytest.mark.parametrize("h", [1, 2])
def test_shift_identity(h):
    """(lambda, mu, alpha mu^T + mu alpha^T + lambda mu^T) * transJ(alpha, beta)
    equals transJ(alpha + lambda, beta + mu)."""
    rng = random.Random(400 + h)
    cases = []
    if h == 1:
        cases.append(([Fraction(1, 2)], [Fraction(0)], [Fraction(1)], [Fraction(1)]))
    for _ in range(200):
        cases.append(
            (rand_vec(rng, h), rand_vec(rng, h), [Fraction(rng.randint(-4, 4)) for _ in range(h)],
             [Fraction(rng.randint(-4, 4)) for _ in range(h)])
        )
    for alpha, beta, lam, mu in cases:
        kañ = [
            [alpha[i] * mu[j] + mu[i] * alpha[j] + lam[i] * mu[j] for j in range(h)]
            for i in range(h)
        ]
        shifted = JacElem.make([[1, 0], [0, 1]], HeisElem.make(lam, mu, kañ))
        lhs = shifted * transJ(alpha, beta)
        rhs = transJ([a + l for a, l in zip(alpha, lam)], [b + m for b, m in zip(beta, mu)])
        assert lhs == rhs


@pytest.mark.parametrize("h", [1, 2, 3])
def test_conj_by_sl2_defining_identity(h):
    rng = random.Random(500 + h)
    for _ in range(200):
        alpha, beta = rand_vec(rng, h), rand_vec(rng, h)
        g = rand_sl2(rng)
        a2, b2, kap = conj_by_sl2(alpha, beta, g)
        lhs = transJ(alpha, beta) * embed_sl2(g, h)
        rhs = embed_sl2(g, h) * transJ(a2, b2) * central(h, kap)
        assert lhs == rhs


def test_conj_by_sl2_examples():
    a2, b2, kap = conj_by_sl2([Fraction(1, 3)], [Fraction(1, 5)], [[1, 0], [0, 1]])
    assert a2 == (Fraction(1, 3),) and b2 == (Fraction(1, 5),)
    assert kap == ((Fraction(0),),)
    alpha, beta = Fraction(2, 7), Fraction(3, 7)
    a2, b2, kap = conj_by_sl2([alpha], [beta], S)
    assert a2 == (beta,) and b2 == (-alpha,)
    assert kap == ((2 * alpha * beta,),)


def test_tp_enumerate_counts():
    assert len(tp_enumerate([2])) == 3
    assert len(tp_enumerate([3])) == 8
    assert len(tp_enumerate([2, 3])) == 24
    assert len(tp_enumerate([5])) == 24
    with pytest.raises(ValueError):
        tp_enumerate([3, 3])


def test_tp_act_examples():
    tp = TorsionPoint.make([Fraction(1, 2)], [Fraction(0)])
    assert tp_act(tp, [[1, 0], [0, 1]], [2]) == tp
    out = tp_act(tp, S, [2])
    assert out == TorsionPoint.make([Fraction(0)], [Fraction(1, 2)])


def test_tp_act_is_right_action():
    rng = random.Random(23)
    for primes in ([2], [3], [2, 3]):
        pts = sorted(tp_enumerate(primes), key=lambda t: (t.alpha, t.beta))
        for _ in range(50):
            tp = rng.choice(pts)
            g1, g2 = rand_sl2(rng), rand_sl2(rng)
            g12 = [[sum(g1[i][k] * g2[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
            assert tp_act(tp_act(tp, g1, primes), g2, primes) == tp_act(tp, g12, primes)


def orbit(start, primes):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for tp in frontier:
            for g in (S, T):
                img = tp_act(tp, g, primes)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


@pytest.mark.parametrize("primes", [[2], [3], [5], [7], [2, 3], [3, 5], [5, 7], [2, 7]])
def test_tp_transitivity(primes):
    pts = tp_enumerate(primes)
    some = next(iter(pts))
    assert orbit(some, primes) == pts
