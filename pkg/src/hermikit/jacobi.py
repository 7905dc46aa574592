"""Truncated Fourier expansions of elliptic Jacobi forms (genus 1, cogenus h):
support predicates, vanishing order, torsion-point specialization, linear maps
in the elliptic variable, Voronoi cells, and vanishing-order loss bounds.

Coefficients are exact cyclotomic numbers so that cancellations at torsion
points are detected, not estimated.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import CycNum
from .lattice import enumerate_quadratic
from .znf import smith_normal_form

# ---------------------------------------------------------------------------
# rational symmetric matrix helpers


def _sym_rows(m):
    rows = tuple(tuple(Fraction(x) for x in r) for r in m)
    for i in range(len(rows)):
        for j in range(len(rows)):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix is not symmetric")
    return rows


def rat_det(rows) -> Fraction:
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, n):
                    a[r][cc] -= f * a[c][cc]
    return det


def rat_rank(rows) -> int:
    a = [list(map(Fraction, r)) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    rank = 0
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(nr):
            if r != rank and a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def sym_is_psd(rows) -> bool:
    rows = _sym_rows(rows)
    n = len(rows)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            sub = [[rows[i][j] for j in idx] for i in idx]
            if rat_det(sub) < 0:
                return False
    return True


def sym_is_pd(rows) -> bool:
    rows = _sym_rows(rows)
    n = len(rows)
    for k in range(1, n + 1):
        sub = [[rows[i][j] for j in range(k)] for i in range(k)]
        if rat_det(sub) <= 0:
            return False
    return True


def rat_inverse(rows):
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(1 if i == j else 0) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _form_value(rows, vec) -> Fraction:
    return sum(rows[i][j] * vec[i] * vec[j] for i in range(len(vec)) for j in range(len(vec)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiIndex:
    """A Jacobi index: symmetric h x h rational matrix with integral diagonal
    and half-integral off-diagonal entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def make(m) -> JacobiIndex:
        rows = _sym_rows(m)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if i == j and x.denominator != 1:
                    raise ValueError("diagonal entries must be integral")
                if i != j and (2 * x).denominator != 1:
                    raise ValueError("off-diagonal entries must be half-integral")
        return JacobiIndex(rows)

    @property
    def h(self) -> int:
        return len(self.rows)

    def is_psd(self) -> bool:
        return sym_is_psd(self.rows)

    def is_pd(self) -> bool:
        return sym_is_pd(self.rows)

    def rank(self) -> int:
        return rat_rank(self.rows)

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.h))

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.h) for j in range(self.h) if i != j)

    def form(self, vec) -> Fraction:
        """m[v] = v^T m v."""
        return _form_value(self.rows, [Fraction(x) for x in vec])

    def act(self, s) -> JacobiIndex:
        """m[s] = s^T m s for an integer h x h' matrix s (columns of s)."""
        h2 = len(s[0])
        rows = [
            [
                sum(Fraction(s[a][i]) * self.rows[a][b] * Fraction(s[b][j]) for a in range(self.h) for b in range(self.h))
                for j in range(h2)
            ]
            for i in range(h2)
        ]
        return JacobiIndex.make(rows)


def support_ok(n, r, m: JacobiIndex) -> bool:
    """The holomorphic support condition: [[2n, r^T], [r, 2m]] is PSD."""
    h = m.h
    block = [[Fraction(0)] * (h + 1) for _ in range(h + 1)]
    block[0][0] = 2 * Fraction(n)
    for i in range(h):
        block[0][i + 1] = block[i + 1][0] = Fraction(r[i])
        for j in range(h):
            block[i + 1][j + 1] = 2 * m.rows[i][j]
    return sym_is_psd(block)


def _as_cyc(v) -> CycNum:
    if isinstance(v, CycNum):
        return v
    return CycNum.from_rational(v)


class JacobiExpansion:
    """A truncated Fourier expansion sum c(n, r) q^n zeta^r, complete for all
    n <= n_max, with CycNum coefficients keyed by (n, r)."""

    def __init__(self, weight: int, index: JacobiIndex, coeffs, n_max: int, check_support=True):
        self.weight = weight
        self.index = index
        self.n_max = n_max
        clean = {}
        for (n, r), v in coeffs.items():
            v = _as_cyc(v)
            if v.terms:
                key = (int(n), tuple(int(x) for x in r))
                if key in clean:
                    raise ValueError(f"duplicate coefficient key {key}")
                if key[0] > n_max:
                    raise ValueError(f"coefficient beyond stated truncation: {key}")
                clean[key] = v
        if check_support:
            for n, r in clean:
                if not support_ok(n, r, index):
                    raise ValueError(f"coefficient ({n}, {r}) violates holomorphic support")
        self.coeffs = clean

    def coefficient(self, n, r) -> CycNum:
        return self.coeffs.get((int(n), tuple(int(x) for x in r)), CycNum.from_rational(0))

    def ord(self):
        """Minimal n carrying a coefficient that is nonzero as a cyclotomic
        number; +inf for the (truncated) zero expansion."""
        live = [n for (n, r), v in self.coeffs.items() if not v.is_zero()]
        return min(live) if live else math.inf

    def scale(self, c) -> JacobiExpansion:
        return JacobiExpansion(
            self.weight,
            self.index,
            {k: v * _as_cyc(c) for k, v in self.coeffs.items()},
            self.n_max,
            check_support=False,
        )

    def __add__(self, other: JacobiExpansion) -> JacobiExpansion:
        if self.index != other.index or self.weight != other.weight:
            raise ValueError("can only add expansions of equal weight and index")
        n_max = min(self.n_max, other.n_max)
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            if k[0] <= n_max:
                out[k] = self.coefficient(*k) + other.coefficient(*k)
        return JacobiExpansion(self.weight, self.index, out, n_max, check_support=False)


def ord(phi: JacobiExpansion):
    return phi.ord()


def lattice_theta_jacobi(gram, vectors, n_max: int) -> JacobiExpansion:
    """The Jacobi theta series of an even positive definite lattice with
    elliptic characteristics: c(n, r) = #{lambda : Q(lambda) = n,
    <lambda, v_j> = r_j}, weight rank/2, index (<v_i, v_j>/2)."""
    rank = len(gram)
    gram = [[int(x) for x in row] for row in gram]
    if any(gram[i][i] % 2 for i in range(rank)):
        raise ValueError("gram matrix must be even")
    if rank % 2:
        raise ValueError("only even rank lattices give integral weight")
    if not sym_is_pd(gram):
        raise ValueError("gram matrix must be positive definite")
    vectors = [list(map(int, v)) for v in vectors]
    h = len(vectors)
    index = JacobiIndex.make(
        [
            [Fraction(sum(gram[a][b] * vi[a] * vj[b] for a in range(rank) for b in range(rank)), 2) for vj in vectors]
            for vi in vectors
        ]
    )
    counts: dict[tuple[int, tuple[int, ...]], int] = {}
    for lam, val in enumerate_quadratic(gram, 2 * n_max):
        n = val / 2
        if n.denominator != 1:
            continue
        r = tuple(sum(gram[a][b] * lam[a] * v[b] for a in range(rank) for b in range(rank)) for v in vectors)
        key = (int(n), r)
        counts[key] = counts.get(key, 0) + 1
    return JacobiExpansion(rank // 2, index, {k: Fraction(v) for k, v in counts.items()}, n_max)


class QExpansion:
    """A truncated expansion in rational powers of q with CycNum coefficients,
    complete below exp_max (None when no truncation bound is known)."""

    def __init__(self, terms, exp_max):
        self.terms = {}
        for e, v in (terms.items() if isinstance(terms, dict) else terms):
            e = Fraction(e)
            v = _as_cyc(v)
            cur = self.terms.get(e)
            self.terms[e] = v if cur is None else cur + v
        self.exp_max = exp_max if exp_max is None else Fraction(exp_max)

    def coefficient(self, e) -> CycNum:
        return self.terms.get(Fraction(e), CycNum.from_rational(0))

    def min_exponent(self):
        """Smallest exponent with a nonzero coefficient after exact
        cancellation; +inf if everything cancels."""
        live = [e for e, v in self.terms.items() if not v.is_zero()]
        return min(live) if live else math.inf

    def scale(self, c) -> QExpansion:
        return QExpansion({e: v * _as_cyc(c) for e, v in self.terms.items()}, self.exp_max)

    def __add__(self, other: QExpansion) -> QExpansion:
        if self.exp_max is None or other.exp_max is None:
            em = None
        else:
            em = min(self.exp_max, other.exp_max)
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, CycNum.from_rational(0)) + v
        return QExpansion(out, em)


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational q >= sqrt(x), reasonably tight."""
    if x <= 0:
        return Fraction(0)
    scale = 10**6
    return Fraction(math.isqrt(x.numerator * x.denominator * scale * scale) + 1, x.denominator * scale)


def _specialization_exp_max(n_max: int, a_val: Fraction) -> Fraction:
    """Valid completeness bound for a specialization: every discarded term
    (those with n > n_max) has exponent >= (sqrt(n) - sqrt(m[alpha]))^2 by
    the PSD block Cauchy-Schwarz estimate, and >= 0 by holomorphic support."""
    best = None
    top = max(n_max + 1, math.ceil(a_val) + 1)
    for n in range(n_max + 1, top + 1):
        q = _sqrt_upper(Fraction(n) * a_val)
        val = Fraction(n) + a_val - 2 * q
        if best is None or val < best:
            best = val
    return max(Fraction(0), best)


def specialize(phi: JacobiExpansion, alpha, beta) -> QExpansion:
    """Specialize to the torsion point z = alpha*tau + beta:

        phi[alpha, beta](tau) = e(m[alpha] tau + 2 alpha^T m beta)
                                * phi(tau, alpha tau + beta).

    The term c(n, r) lands at exponent n + r^T alpha + m[alpha] with
    coefficient c(n, r) e(r^T beta + 2 alpha^T m beta).
    """
    alpha = [Fraction(x) for x in alpha]
    beta = [Fraction(x) for x in beta]
    m = phi.index
    a_val = m.form(alpha)
    cross = 2 * sum(
        alpha[i] * m.rows[i][j] * beta[j] for i in range(m.h) for j in range(m.h)
    )
    terms = []
    for (n, r), v in phi.coeffs.items():
        expo = Fraction(n) + sum(Fraction(x) * a for x, a in zip(r, alpha)) + a_val
        phase = (sum(Fraction(x) * b for x, b in zip(r, beta)) + cross) % 1
        terms.append((expo, v * CycNum.root_of_unity(phase)))
    return QExpansion(terms, _specialization_exp_max(phi.n_max, a_val))


def elliptic_map(phi: JacobiExpansion, s) -> JacobiExpansion:
    """Pullback along z = s z' : index m[s], coefficients summed over the
    fibers of r -> s^T r."""
    s = [list(map(int, row)) for row in s]
    h2 = len(s[0]) if s else 0
    new_index = phi.index.act(s)
    out: dict[tuple[int, tuple[int, ...]], CycNum] = {}
    for (n, r), v in phi.coeffs.items():
        r2 = tuple(sum(s[a][j] * r[a] for a in range(phi.index.h)) for j in range(h2))
        key = (n, r2)
        out[key] = out.get(key, CycNum.from_rational(0)) + v
    return JacobiExpansion(phi.weight, new_index, out, phi.n_max, check_support=False)


def _coset_key(r, two_m_snf):
    """Canonical label of r modulo the lattice 2m Z^h, via the Smith normal
    form of the integer matrix 2m."""
    d, U, V = two_m_snf
    h = len(r)
    coords = [sum(U[i][j] * r[j] for j in range(h)) for i in range(h)]
    return tuple(c % di if di else c for c, di in zip(coords, d))


def symmetrize_synthetic(m: JacobiIndex, seed: int, n_max: int) -> JacobiExpansion:
    """Random test expansion respecting the orbit relation of modular
    invariance: c(n, r) = c(n', r') whenever r' = r + 2m lambda and
    n - (1/4)m^{-1}[r] = n' - (1/4)m^{-1}[r']."""
    if not m.is_pd():
        raise ValueError("synthetic expansions need a positive definite index")
    h = m.h
    two_m = [[int(2 * x) for x in row] for row in m.rows]
    snf = smith_normal_form(two_m)
    minv = rat_inverse(m.rows)
    rng = random.Random(seed)
    values: dict[tuple, Fraction] = {}
    coeffs = {}
    for r, q in enumerate_quadratic(minv, 4 * n_max):
        disc = q / 4  # (1/4) m^{-1}[r]
        n_lo = math.ceil(disc)
        for n in range(n_lo, n_max + 1):
            key = (Fraction(n) - disc, _coset_key(r, snf))
            if key not in values:
                values[key] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if values[key]:
                coeffs[(n, r)] = values[key]
    return JacobiExpansion(0, m, coeffs, n_max)


# ---------------------------------------------------------------------------
# Voronoi cells


@dataclass(frozen=True)
class VoronoiData:
    index: JacobiIndex
    extreme_points: tuple[tuple[Fraction, ...], ...]


def voronoi(m: JacobiIndex) -> VoronoiData:
    """Extreme points of the Voronoi cell of (Z^h, s -> m[s]).

    Diagonal indices have the cube [-1/2, 1/2]^h as cell for any h; general
    2 x 2 cells are computed by exact half-plane vertex enumeration.
    """
    if not m.is_pd():
        raise ValueError("Voronoi cell needs a positive definite index")
    if m.is_diagonal():
        pts = tuple(
            tuple(Fraction(s, 2) for s in signs)
            for signs in itertools.product((-1, 1), repeat=m.h)
        )
        return VoronoiData(m, pts)
    if m.h != 2:
        raise ValueError("general Voronoi cells are implemented for h <= 2 only")
    bound = 4 * max(m.rows[i][i] for i in range(2))
    while True:
        lams = [lam for lam, _ in enumerate_quadratic(m.rows, bound) if lam != (0, 0)]
        verts = _vertex_enumeration_2d(m, lams)
        vmax = max(m.form(v) for v in verts)
        if bound >= 4 * vmax:
            break
        bound = 4 * vmax + 1
    return VoronoiData(m, tuple(sorted(verts)))


def _vertex_enumeration_2d(m: JacobiIndex, lams):
    """Vertices of {s : 2 s^T m lam + m[lam] >= 0 for all lam}."""

    def grad(lam):
        return [2 * sum(m.rows[i][j] * lam[j] for j in range(2)) for i in range(2)]

    cons = [(grad(lam), m.form(lam)) for lam in lams]
    verts = set()
    for (g1, c1), (g2, c2) in itertools.combinations(cons, 2):
        det = g1[0] * g2[1] - g1[1] * g2[0]
        if det == 0:
            continue
        # g . s = -c for both constraints
        s0 = (-c1 * g2[1] + c2 * g1[1]) / det
        s1 = (-c2 * g1[0] + c1 * g2[0]) / det
        if all(g[0] * s0 + g[1] * s1 + c >= 0 for g, c in cons):
            verts.add((s0, s1))
    return verts


def voronoi_loss(m: JacobiIndex, alpha, extreme_points=None) -> Fraction:
    """max { m[s] - m[s + lambda + alpha] : s extreme, lambda in Z^h },
    the vanishing-order loss at the torsion point alpha.

    The lambda search is exact: only lambda with m[s + lambda + alpha] <=
    max_s m[s] can contribute, a finite set by positive definiteness.
    """
    alpha = [Fraction(x) for x in alpha]
    if extreme_points is None:
        extreme_points = voronoi(m).extreme_points
    v0 = max(m.form(s) for s in extreme_points)
    best = None
    for s in extreme_points:
        ms = m.form(s)
        shift = [si + ai for si, ai in zip(s, alpha)]
        for lam, val in enumerate_quadratic(m.rows, v0, shift=shift):
            cand = ms - val
            if best is None or cand > best:
                best = cand
    assert best is not None and best >= 0
    return best


def ord_lower_bound(ord_phi, m: JacobiIndex, alpha) -> Fraction:
    """ord(phi[alpha, beta]) >= ord(phi) - voronoi_loss(m, alpha)."""
    return Fraction(ord_phi) - voronoi_loss(m, alpha)


def ord_lower_bound_diagonal(ord_phi, m: JacobiIndex, alpha) -> Fraction:
    """Closed form for diagonal indices:
    ord(phi) - sum_i m_ii alpha_i (1 - alpha_i), with alpha reduced mod 1."""
    if not m.is_diagonal():
        raise ValueError("closed form requires a diagonal index")
    loss = Fraction(0)
    for i, a in enumerate(alpha):
        a = Fraction(a) % 1
        loss += m.rows[i][i] * a * (1 - a)
    return Fraction(ord_phi) - loss
