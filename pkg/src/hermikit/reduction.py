"""Reduction theory for positive semi-definite Hermitian matrices over O_F:
the lexicographic ordering on sorted diagonals, a BFS word-search reduction
with a deterministic tie-break, and enumeration of reduced representatives
with prescribed diagonal."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arith import FieldDisc, HermMatrix, Mat
from .lattice import enumerate_quadratic


def prec(a, b) -> bool:
    """Strict lexicographic comparison of ascending tuples: a < b."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("tuples of different length are not comparable")
    return a < b


def sorted_diag(m: HermMatrix) -> tuple[Fraction, ...]:
    return tuple(sorted(m.diagonal()))


def prec_herm(m1: HermMatrix, m2: HermMatrix) -> bool:
    """The ordering extended to Hermitian matrices via sorted diagonals."""
    return prec(sorted_diag(m1), sorted_diag(m2))


def _coord_key(m: HermMatrix):
    coords = tuple((e.a, e.b) for row in m.mat.rows for e in row)
    return (sorted_diag(m), m.diagonal(), coords)


def reduction_generators(h: int, D: int) -> list[Mat]:
    """Generators used for the GL_h(O_F) word search: permutations, unit
    diagonal matrices with square-one determinant, and elementary matrices
    e_ij(r) for r in {1, -1, omega, -omega}."""
    K = FieldDisc(D)
    gens: list[Mat] = []
    seen = set()

    def push(u: Mat):
        if u not in seen:
            seen.add(u)
            gens.append(u)

    for perm in itertools.permutations(range(h)):
        rows = [[K.one if perm[i] == j else K.zero for j in range(h)] for i in range(h)]
        u = Mat(rows, D)
        if u != Mat.identity(h, D):
            push(u)
    units = K.units()
    for combo in itertools.product(units, repeat=h):
        det = combo[0]
        for c in combo[1:]:
            det = det * c
        if (det * det - K.one).is_zero():
            rows = [[combo[i] if i == j else K.zero for j in range(h)] for i in range(h)]
            u = Mat(rows, D)
            if u != Mat.identity(h, D):
                push(u)
    elems = [K.one, -K.one, K.omega, -K.omega]
    for i in range(h):
        for j in range(h):
            if i == j:
                continue
            for r in elems:
                rows = [[K.one if a == b else K.zero for b in range(h)] for a in range(h)]
                rows[i][j] = r
                push(Mat(rows, D))
    return gens


@dataclass(frozen=True)
class ReducedCertificate:
    """Result of a bounded orbit search: m_red = m[u] minimal among all
    words of length <= search_bound, plus the measured off-diagonal
    constant max |m_ij|^2 / (m_ii + 1)^2."""

    m_red: HermMatrix
    u: Mat
    search_bound: int
    offdiag_constant: Fraction


def _offdiag_constant(m: HermMatrix) -> Fraction:
    best = Fraction(0)
    for i in range(m.g):
        for j in range(m.g):
            if i != j:
                d = m[i, i].as_rational()
                ratio = m[i, j].norm() / (d + 1) ** 2
                best = max(best, ratio)
    return best


def reduce(m: HermMatrix, bound: int = 6, prune_slack: Fraction = Fraction(2)) -> ReducedCertificate:
    """BFS over generator words of length <= bound, minimizing the sorted
    diagonal; ties are broken by the actual diagonal and then the row-major
    (a, b) coordinate tuple, making the representative reproducible.

    States whose trace exceeds trace(m) + prune_slack are pruned; at desk
    scale this is validated against exhaustive off-diagonal search.
    """
    if not m.is_psd():
        raise ValueError("reduce expects a positive semi-definite matrix")
    D = m.D
    h = m.g
    if h == 0:
        return ReducedCertificate(m, Mat.identity(0, D), bound, Fraction(0))
    gens = reduction_generators(h, D)
    eye = Mat.identity(h, D)
    cap = m.trace() + prune_slack

    best, best_u = m, eye
    seen = {m}
    frontier = [(m, eye)]
    for _ in range(bound):
        nxt = []
        for cur, u in frontier:
            for gmat in gens:
                cand = cur.act(gmat)
                if cand in seen or cand.trace() > cap:
                    continue
                seen.add(cand)
                cu = u * gmat
                nxt.append((cand, cu))
                if _coord_key(cand) < _coord_key(best):
                    best, best_u = cand, cu
        if not nxt:
            break
        frontier = nxt
    return ReducedCertificate(best, best_u, bound, _offdiag_constant(best))


def orbit_minimum(m: HermMatrix, slack: Fraction = Fraction(2)) -> HermMatrix:
    """Exhaustive oracle: close the orbit under the generator set inside the
    trace ball trace <= trace(m) + slack and take the minimum.  Independent
    of the bounded word search in reduce()."""
    if not m.is_psd():
        raise ValueError("orbit_minimum expects a positive semi-definite matrix")
    gens = reduction_generators(m.g, m.D)
    cap = m.trace() + slack
    seen = {m}
    frontier = [m]
    while frontier:
        nxt = []
        for cur in frontier:
            for gmat in gens:
                cand = cur.act(gmat)
                if cand not in seen and cand.trace() <= cap:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return min(seen, key=_coord_key)


def is_reduced(m: HermMatrix, bound: int = 6) -> bool:
    return reduce(m, bound).m_red == m


def inv_different_elements(D: int, max_norm: Fraction):
    """All x in the inverse different with norm(x) <= max_norm."""
    K = FieldDisc(D)
    b1, b2 = K.inv_different_basis()
    # Gram of the norm form on the Z-basis (b1, b2): N(u b1 + v b2)
    g11 = 2 * b1.norm()
    g22 = 2 * b2.norm()
    g12 = (b1 * b2.conj() + b2 * b1.conj()).as_rational()
    gram = [[g11, g12], [g12, g22]]
    out = []
    for (u, v), _ in enumerate_quadratic(gram, 2 * Fraction(max_norm)):
        out.append(u * b1 + v * b2)
    return out


def enumerate_M(diag, D: int, bound: int = 6) -> set[HermMatrix]:
    """All reduced positive semi-definite dual-lattice matrices whose sorted
    diagonal equals ``diag``: brute force over off-diagonal entries within
    the PSD 2x2 minor bound |m_ij|^2 <= m_ii m_jj, then filtered through the
    reduction convention of reduce()."""
    diag = [Fraction(d) for d in diag]
    if any(d < 0 for d in diag) or sorted(diag) != diag:
        raise ValueError("diagonal must be ascending and non-negative")
    h = len(diag)
    if h > 3 or (diag and max(diag) > 10):
        raise ValueError("enumerate_M is desk scale: h <= 3, entries <= 10")
    K = FieldDisc(D)
    if h == 0:
        return {HermMatrix.zero(0, D)}
    pair_idx = [(i, j) for i in range(h) for j in range(i + 1, h)]
    choices = []
    for i, j in pair_idx:
        cap = diag[i] * diag[j]
        choices.append(inv_different_elements(D, cap))
    out = set()
    for combo in itertools.product(*choices):
        rows = [[K.zero] * h for _ in range(h)]
        for i in range(h):
            rows[i][i] = K(diag[i])
        for (i, j), x in zip(pair_idx, combo):
            rows[i][j] = x
            rows[j][i] = x.conj()
        m = HermMatrix(Mat(rows, D))
        if m.is_psd() and reduce(m, bound).m_red == m:
            out.add(m)
    return out


def count_bound_ratio(diag, size: int) -> Fraction:
    """The shape function prod max(1, m_i)^(2h-2i) against which the size of
    enumerate_M is measured."""
    h = len(diag)
    prod = Fraction(1)
    for i, d in enumerate(diag, start=1):
        prod *= max(Fraction(1), Fraction(d)) ** (2 * h - 2 * i)
    return Fraction(size) / prod
