"""Exact group arithmetic for the Heisenberg and Jacobi groups of cogenus h,
translation elements, torsion point sets of prime denominator, and the
SL2(Z) action on them.  All coordinates are rational."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

Vec = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def _matrix(m) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _outer(u: Vec, v: Vec) -> Matrix:
    return tuple(tuple(a * b for b in v) for a in u)


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def _mat2_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))


@dataclass(frozen=True)
class HeisElem:
    """An element (lambda, mu, kappa) of the rank-h Heisenberg-type group;
    the defining constraint is that kappa + mu * lambda^T is symmetric."""

    lam: Vec
    mu: Vec
    kappa: Matrix

    def __post_init__(self):
        h = len(self.lam)
        if len(self.mu) != h or len(self.kappa) != h or any(len(r) != h for r in self.kappa):
            raise ValueError("inconsistent sizes in Heisenberg element")
        if not _is_symmetric(_mat_add(self.kappa, _outer(self.mu, self.lam))):
            raise ValueError("kappa + mu*lambda^T must be symmetric")

    @staticmethod
    def make(lam, mu, kappa) -> HeisElem:
        return HeisElem(_vec(lam), _vec(mu), _matrix(kappa))

    @staticmethod
    def identity(h: int) -> HeisElem:
        z = tuple(Fraction(0) for _ in range(h))
        return HeisElem(z, z, tuple(z for _ in range(h)))

    @property
    def h(self) -> int:
        return len(self.lam)

    def __mul__(self, other: HeisElem) -> HeisElem:
        if self.h != other.h:
            raise ValueError("Heisenberg elements of different rank")
        lam = tuple(a + b for a, b in zip(self.lam, other.lam))
        mu = tuple(a + b for a, b in zip(self.mu, other.mu))
        kappa = _mat_add(
            _mat_add(self.kappa, other.kappa),
            _mat_sub(_outer(self.lam, other.mu), _outer(self.mu, other.lam)),
        )
        return HeisElem(lam, mu, kappa)

    def inverse(self) -> HeisElem:
        kap = _mat_sub(_outer(self.lam, self.mu), _outer(self.mu, self.lam))
        return HeisElem(
            tuple(-x for x in self.lam),
            tuple(-x for x in self.mu),
            _mat_sub(kap, self.kappa),
        )

    def sl2_act(self, gamma: Matrix) -> HeisElem:
        """Right action (lambda, mu, kappa) -> ((lambda, mu) gamma, kappa)."""
        (a, b), (c, d) = gamma
        lam = tuple(a * l + c * m for l, m in zip(self.lam, self.mu))
        mu = tuple(b * l + d * m for l, m in zip(self.lam, self.mu))
        return HeisElem(lam, mu, self.kappa)

    def symmetric_part(self) -> Matrix:
        """The alternate coordinate kappa + mu*lambda^T of the isomorphism
        onto (R^h + R^h) x Sym_h(R); a view, not a second representation."""
        return _mat_add(self.kappa, _outer(self.mu, self.lam))


def heis_mul(x: HeisElem, y: HeisElem) -> HeisElem:
    return x * y


@dataclass(frozen=True)
class JacElem:
    """An element (gamma, heis) of the Jacobi group SL2 x| H_h."""

    gamma: Matrix
    heis: HeisElem

    def __post_init__(self):
        (a, b), (c, d) = self.gamma
        if a * d - b * c != 1:
            raise ValueError("gamma must have determinant 1")

    @staticmethod
    def make(gamma, heis: HeisElem) -> JacElem:
        return JacElem(_matrix(gamma), heis)

    @staticmethod
    def identity(h: int) -> JacElem:
        e = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
        return JacElem(e, HeisElem.identity(h))

    @property
    def h(self) -> int:
        return self.heis.h

    def __mul__(self, other: JacElem) -> JacElem:
        gamma = _mat2_mul(self.gamma, other.gamma)
        return JacElem(gamma, self.heis.sl2_act(other.gamma) * other.heis)

    def inverse(self) -> JacElem:
        (a, b), (c, d) = self.gamma
        ginv = ((d, -b), (-c, a))
        return JacElem(ginv, self.heis.inverse().sl2_act(ginv))


def jac_mul(a: JacElem, b: JacElem) -> JacElem:
    return a * b


def transJ(alpha, beta) -> JacElem:
    """The translation element (id, (alpha, beta, alpha*beta^T))."""
    alpha, beta = _vec(alpha), _vec(beta)
    return JacElem.make(
        [[1, 0], [0, 1]],
        HeisElem(alpha, beta, _outer(alpha, beta)),
    )


def central(h: int, kappa) -> JacElem:
    """The central element (id, (0, 0, kappa))."""
    z = tuple(Fraction(0) for _ in range(h))
    return JacElem.make([[1, 0], [0, 1]], HeisElem(z, z, _matrix(kappa)))


def embed_sl2(gamma, h: int) -> JacElem:
    """gamma in SL2 viewed inside the Jacobi group."""
    return JacElem.make(gamma, HeisElem.identity(h))


def conj_by_sl2(alpha, beta, gamma):
    """Move transJ(alpha, beta) past gamma:

        transJ(alpha, beta) * gamma
            = gamma * transJ(alpha', beta') * (0, 0, kappa_c)

    with (alpha', beta') = (alpha, beta) gamma and
    kappa_c = alpha*beta^T - alpha'*beta'^T.  Returns (alpha', beta', kappa_c).
    """
    alpha, beta = _vec(alpha), _vec(beta)
    gamma = _matrix(gamma)
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError("gamma must have determinant 1")
    alpha2 = tuple(a * x + c * y for x, y in zip(alpha, beta))
    beta2 = tuple(b * x + d * y for x, y in zip(alpha, beta))
    kappa_c = _mat_sub(_outer(alpha, beta), _outer(alpha2, beta2))
    return alpha2, beta2, kappa_c


# ---------------------------------------------------------------------------
# torsion points of prime denominator


@dataclass(frozen=True)
class TorsionPoint:
    alpha: Vec
    beta: Vec

    @staticmethod
    def make(alpha, beta) -> TorsionPoint:
        return TorsionPoint(_vec(alpha), _vec(beta))

    @property
    def h(self) -> int:
        return len(self.alpha)


def tp_is_member(tp: TorsionPoint, primes) -> bool:
    """Membership in TP(p_1, ..., p_h): entries in (1/p_i)Z reduced to [0,1)
    and (p_i alpha_i, p_i beta_i) nonzero mod p_i."""
    if tp.h != len(primes):
        return False
    for a, b, p in zip(tp.alpha, tp.beta, primes):
        if not (0 <= a < 1 and 0 <= b < 1):
            return False
        pa, pb = a * p, b * p
        if pa.denominator != 1 or pb.denominator != 1:
            return False
        if pa % p == 0 and pb % p == 0:
            return False
    return True


def tp_enumerate(primes) -> set[TorsionPoint]:
    """All of TP(p_1,...,p_h); the cardinality is prod (p_i^2 - 1)."""
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    per_coord = []
    for p in primes:
        pairs = [
            (Fraction(a, p), Fraction(b, p))
            for a in range(p)
            for b in range(p)
            if a or b
        ]
        per_coord.append(pairs)
    points = set()
    for combo in itertools.product(*per_coord):
        alpha = tuple(ab[0] for ab in combo)
        beta = tuple(ab[1] for ab in combo)
        points.add(TorsionPoint(alpha, beta))
    return points


def tp_act(tp: TorsionPoint, gamma, primes) -> TorsionPoint:
    """The right action of SL2(Z): (alpha, beta) gamma reduced mod Z^h x Z^h
    back into TP(p_1,...,p_h)."""
    if not tp_is_member(tp, primes):
        raise ValueError("point is not in the stated torsion point set")
    gamma = _matrix(gamma)
    if any(x.denominator != 1 for row in gamma for x in row):
        raise ValueError("gamma must be integral")
    alpha2, beta2, _ = conj_by_sl2(tp.alpha, tp.beta, gamma)
    out = TorsionPoint(tuple(a % 1 for a in alpha2), tuple(b % 1 for b in beta2))
    assert tp_is_member(out, primes)
    return out
