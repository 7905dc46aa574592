"""Effective bound formulas: vanishing thresholds, pseudo-determinant,
the Skoruppa-style dimension bound, Hermitian-to-elliptic index transfer,
Hermitian Sturm corollaries, the cut-simplex integral, and accumulated
Sturm criteria.  Every verdict is an exact rational comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import FieldDisc, HermMatrix
from .jacobi import JacobiIndex, rat_det
from .znf import kernel_completion

# Rational majorant of the irrational 2/(3*sqrt(3)) = 0.3849001... in the
# Skoruppa bound; replacing it by 7699/20000 = 0.38495 keeps the bound valid.
SKORUPPA_MAJORANT = Fraction(7699, 20000)

# Classical Hermite constants: gamma_r^r for r = 1..8.
HERMITE_POWERS = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}


@dataclass(frozen=True)
class HermiteTable:
    gamma_pow: dict = field(default_factory=lambda: dict(HERMITE_POWERS))


@dataclass(frozen=True)
class VanishVerdict:
    forces_zero: bool
    lhs: Fraction
    rhs: Fraction
    rank_used: int

    def __post_init__(self):
        assert self.forces_zero == (self.lhs > self.rhs)


def _vanish_lhs(rank: int, nu) -> Fraction:
    nu = Fraction(nu)
    rr = Fraction(rank**rank) if rank else Fraction(1)  # 0^0 = 1
    return nu ** (rank + 1) / (Fraction(2) ** (rank + 1) * rr)


def vanish_diag(k: int, diag, nu) -> VanishVerdict:
    """Vanishing threshold for diagonal positive definite indices:
    nu^(h+1) / (2^(h+1) h^h) > (k/12) prod m_ii forces the zero space."""
    diag = [Fraction(d) for d in diag]
    if any(d < 1 for d in diag):
        raise ValueError("diagonal entries must be >= 1")
    h = len(diag)
    lhs = _vanish_lhs(h, nu)
    rhs = Fraction(k, 12) * math.prod(diag, start=Fraction(1))
    return VanishVerdict(lhs > rhs, lhs, rhs, h)


def vanish_general(k: int, m: JacobiIndex, nu) -> VanishVerdict:
    """Rank-aware vanishing threshold for PSD indices; the product runs over
    the nonzero diagonal entries and rank 0 degenerates to nu/2 > k/12."""
    if not m.is_psd():
        raise ValueError("index must be positive semi-definite")
    r = m.rank()
    lhs = _vanish_lhs(r, nu)
    rhs = Fraction(k, 12) * math.prod((d for d in m.diagonal() if d), start=Fraction(1))
    return VanishVerdict(lhs > rhs, lhs, rhs, r)


def vanish_basis_independent(k: int, m: JacobiIndex, nu, table: HermiteTable | None = None) -> VanishVerdict:
    """Basis independent variant using Hermite constants and pdet."""
    if not m.is_psd():
        raise ValueError("index must be positive semi-definite")
    table = table or HermiteTable()
    r = m.rank()
    if r > 8:
        raise ValueError("no tabulated Hermite constant beyond rank 8")
    lhs = _vanish_lhs(r, nu)
    gamma = Fraction(table.gamma_pow[r]) if r else Fraction(1)
    rhs = gamma * Fraction(k, 12) * pdet(m)
    return VanishVerdict(lhs > rhs, lhs, rhs, r)


def unimodular_split(m: JacobiIndex):
    """u in GL_h(Z) and the invertible block m' with m[u] = diag(m', 0)."""
    u = kernel_completion([list(r) for r in m.rows])
    mu = m.act(u)
    k = m.rank()
    block = [[mu.rows[i][j] for j in range(k)] for i in range(k)]
    return block, u


def pdet(m: JacobiIndex) -> Fraction:
    """Pseudo-determinant: det of the invertible block of a unimodular
    split m[u] = diag(m', 0); empty block gives 1."""
    if not m.is_psd():
        raise ValueError("pdet is used on positive semi-definite indices here")
    block, _ = unimodular_split(m)
    return rat_det(block) if block else Fraction(1)


def dim_upper_skoruppa(k: int, m: JacobiIndex) -> int:
    """Dimension upper bound for Jacobi forms of weight k >= 2 + h/2 and
    positive definite index m:

        (k/2 - h/4 - 1/2) det(2m) + (1/4) det(2m) + c det(2m) + (1/2) det(2m)

    with the irrational constant c = 2/(3 sqrt 3) replaced by the rational
    majorant SKORUPPA_MAJORANT, then rounded down."""
    h = m.h
    if Fraction(k) < 2 + Fraction(h, 2):
        raise ValueError(f"weight {k} below the threshold 2 + h/2 for h={h}")
    if h and not m.is_pd():
        raise ValueError("index must be positive definite")
    det2m = rat_det([[2 * x for x in row] for row in m.rows]) if h else Fraction(1)
    value = (
        (Fraction(k, 2) - Fraction(h, 4) - Fraction(1, 2)) * det2m
        + Fraction(1, 4) * det2m
        + SKORUPPA_MAJORANT * det2m
        + Fraction(1, 2) * det2m
    )
    return math.floor(value)


def herm_to_elliptic_index(m: HermMatrix, D: int | None = None) -> JacobiIndex:
    """Transfer a Hermitian index to an elliptic one of doubled size:

        m_F = (1/2) [[tr(m), tr(m a)], [tr(m^T a), tr(m |a|^2)]]

    entrywise Galois traces, a = omega; the defining property is
    m_F[(x; y)] = m[x + y omega]."""
    if D is None:
        D = m.D
    if not m.is_dual_member(1):
        raise ValueError("Hermitian index must lie in the dual lattice")
    K = FieldDisc(D)
    a = K.omega
    h = m.g
    nsq = a.norm()
    rows = [[Fraction(0)] * (2 * h) for _ in range(2 * h)]
    for i in range(h):
        for j in range(h):
            rows[i][j] = m[i, j].trace() / 2
            rows[i][h + j] = (m[i, j] * a).trace() / 2
            rows[h + i][j] = (m[j, i] * a).trace() / 2
            rows[h + i][h + j] = (m[i, j] * nsq).trace() / 2
    return JacobiIndex.make(rows)


def herm_vanish(k: int, m: HermMatrix, nu, D: int | None = None) -> VanishVerdict:
    """Hermitian Sturm bound: with r = rk(m),

        nu^(2r+1) / (2^(4r+1) r^(2r)) > (D(D-1)/4)^r (k/12) prod m_ii^2

    forces the space of vanishing order nu to be zero."""
    if D is None:
        D = m.D
    if not m.is_psd():
        raise ValueError("index must be positive semi-definite")
    r = m.rank()
    nu = Fraction(nu)
    rr = Fraction(r ** (2 * r)) if r else Fraction(1)
    lhs = nu ** (2 * r + 1) / (Fraction(2) ** (4 * r + 1) * rr)
    disc_factor = (Fraction(D * (D - 1), 4)) ** r
    rhs = disc_factor * Fraction(k, 12) * math.prod(
        (d * d for d in m.diagonal() if d), start=Fraction(1)
    )
    return VanishVerdict(lhs > rhs, lhs, rhs, r)


def herm_dim_upper(k: int, m: HermMatrix, D: int | None = None) -> int:
    """Dimension bound for Hermitian Jacobi forms through the index transfer:
    split m_F unimodularly into its positive definite block and apply the
    Skoruppa-style bound.  The effective constant is the one of
    dim_upper_skoruppa, one admissible choice."""
    if D is None:
        D = m.D
    if Fraction(k) < 2 + m.g:
        raise ValueError(f"weight {k} below the threshold 2 + h for h={m.g}")
    mf = herm_to_elliptic_index(m, D)
    block, _ = unimodular_split(mf)
    return dim_upper_skoruppa(k, JacobiIndex.make(block))


# ---------------------------------------------------------------------------
# the cut-simplex integral, as exact piecewise polynomials


class _PiecewisePoly:
    """Piecewise polynomial on [b_0, inf), zero left of b_0; pieces[i] are
    the coefficients valid on [breaks[i], breaks[i+1]) (the last piece
    extends to infinity)."""

    def __init__(self, breaks, pieces):
        self.breaks = [Fraction(b) for b in breaks]
        self.pieces = [list(map(Fraction, p)) for p in pieces]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < self.breaks[0]:
            return Fraction(0)
        idx = 0
        for i, b in enumerate(self.breaks):
            if x >= b:
                idx = i
        return sum(c * x**k for k, c in enumerate(self.pieces[idx]))

    def antiderivative(self) -> _PiecewisePoly:
        """The antiderivative vanishing at the first breakpoint; continuous."""
        pieces = []
        acc = Fraction(0)
        for i, p in enumerate(self.pieces):
            anti = [Fraction(0)] + [c / (k + 1) for k, c in enumerate(p)]
            b = self.breaks[i]
            val_at_b = sum(c * b**k for k, c in enumerate(anti))
            anti[0] = acc - val_at_b
            pieces.append(anti)
            if i + 1 < len(self.breaks):
                nb = self.breaks[i + 1]
                acc = sum(c * nb**k for k, c in enumerate(anti))
        return _PiecewisePoly(self.breaks, pieces)


def _poly_shift(p, w):
    """Coefficients of x -> p(x - w)."""
    out = [Fraction(0)] * len(p)
    for k, c in enumerate(p):
        for i in range(k + 1):
            out[i] += c * math.comb(k, i) * (-w) ** (k - i)
    return out


def _box_average(A: _PiecewisePoly, w: Fraction) -> _PiecewisePoly:
    """(A(x) - A(x - w)) / w as a piecewise polynomial."""
    breaks = sorted(set(A.breaks) | {b + w for b in A.breaks})
    pieces = []

    def poly_at(func, x_lo, x_hi, shift):
        # the polynomial of ``func`` on [x_lo, x_hi) shifted by ``shift``
        mid = (x_lo + x_hi) / 2 - shift
        if mid < func.breaks[0]:
            return [Fraction(0)]
        idx = 0
        for i, b in enumerate(func.breaks):
            if mid >= b:
                idx = i
        return _poly_shift(func.pieces[idx], shift)

    ext = breaks + [breaks[-1] + 1]
    for lo, hi in zip(ext, ext[1:]):
        p1 = poly_at(A, lo, hi, Fraction(0))
        p2 = poly_at(A, lo, hi, w)
        n = max(len(p1), len(p2))
        p1 += [Fraction(0)] * (n - len(p1))
        p2 += [Fraction(0)] * (n - len(p2))
        pieces.append([(a - b) / w for a, b in zip(p1, p2)])
    return _PiecewisePoly(breaks, pieces)


def _cut_simplex_profile(weights) -> _PiecewisePoly:
    """F_h(c) = integral over [0,1]^h cap {sum w x <= c} of (c - sum w x)."""
    F = _PiecewisePoly([Fraction(0)], [[Fraction(0), Fraction(1)]])  # F_0(c) = c for c >= 0
    for w in weights:
        F = _box_average(F.antiderivative(), Fraction(w))
    return F


def cut_simplex_integral(nu, weights) -> Fraction:
    """Exact value of the integral of (nu - sum_i w_i x_i) over the cut
    simplex [0,1]^h cap {sum w x <= nu}; with nu = 1 this is the normalized
    integral with xi_i = w_i."""
    weights = [Fraction(w) for w in weights]
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    if len(weights) > 3:
        raise ValueError("exact mode is desk scale: h <= 3")
    return _cut_simplex_profile(weights)(Fraction(nu))


def cut_simplex_lower_bound(nu, weights) -> Fraction:
    nu = Fraction(nu)
    h = len(weights)
    return nu ** (h + 1) / (
        Fraction(2) ** (h + 1) * Fraction(h**h) * math.prod((Fraction(w) for w in weights), start=Fraction(1))
    )


def check_lower(nu, weights) -> bool:
    """The integral estimate: cut_simplex_integral >= nu^(h+1) / (2^(h+1) h^h
    prod w_i), exactly."""
    return cut_simplex_integral(nu, weights) >= cut_simplex_lower_bound(nu, weights)


# ---------------------------------------------------------------------------
# accumulated criteria


def accumulated_criterion(k: int, ords) -> bool:
    """Sum of vanishing orders on a transitive SL2(Z)-set B: everything
    vanishes when sum ord > (1/12) k #B, strictly."""
    ords = [Fraction(o) for o in ords]
    return sum(ords, Fraction(0)) > Fraction(k * len(ords), 12)


def prime_tuple_criterion(k: int, diag, nu, primes) -> bool:
    """The vanishing criterion instantiated at a tuple of distinct prime
    denominators:

        (prod p_i (p_i - 1)) (nu / (2^(h+1) h^h)) prod (nu / m_ii)
            > (k/12) prod (p_i^2 - 1).
    """
    diag = [Fraction(d) for d in diag]
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    if len(primes) != len(diag):
        raise ValueError("need one prime per diagonal entry")
    if any(d <= 0 for d in diag):
        raise ValueError("diagonal entries must be positive")
    h = len(diag)
    nu = Fraction(nu)
    lhs = (
        math.prod((Fraction(p * (p - 1)) for p in primes), start=Fraction(1))
        * nu
        / (Fraction(2) ** (h + 1) * Fraction(h**h))
        * math.prod((nu / d for d in diag), start=Fraction(1))
    )
    rhs = Fraction(k, 12) * math.prod((Fraction(p * p - 1) for p in primes), start=Fraction(1))
    return lhs > rhs
