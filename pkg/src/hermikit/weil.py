"""Finite quadratic modules (discriminant forms) of even Z-lattices and of
Hermitian O_F-lattices, and the genus-g Weil representation generator
matrices.

Phase bookkeeping (the values of q, the pairing, and all exponents) is exact
rational arithmetic; only the assembled generator matrices use complex
floats, because of the irrational 1/sqrt(card) normalization.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import FieldDisc, FieldElem, HermMatrix, Mat
from .znf import invert_unimodular, smith_normal_form


def signature_of_gram(gram) -> int:
    """Exact signature of a nondegenerate rational symmetric matrix, by
    congruence diagonalization (Sylvester)."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    sig = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal entry, or create one
        piv = next((i for i in idx if a[i][i]), None)
        if piv is None:
            i, j = next(
                ((i, j) for i in idx for j in idx if a[i][j]),
                (None, None),
            )
            if i is None:
                break  # zero block: degenerate, contributes nothing
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        sig += 1 if a[piv][piv] > 0 else -1
        for r in idx:
            if r != piv and a[r][piv]:
                f = a[r][piv] / a[piv][piv]
                for c in range(n):
                    a[r][c] -= f * a[piv][c]
                for c in range(n):
                    a[c][r] -= f * a[c][piv]
        idx = [i for i in idx if i != piv]
    return sig


class DiscForm:
    """The discriminant form disc(L) = L^vee / L of an even lattice given by
    an integer Gram matrix, with exact Q/Z-valued quadratic form and pairing.

    Elements are labelled by integer tuples (one coordinate per Smith normal
    form invariant factor, including the trivial ones).  For Hermitian
    lattices the form also carries the residual O_F-action.
    """

    def __init__(self, gram):
        gram = [[int(x) for x in row] for row in gram]
        n = len(gram)
        if any(len(r) != n for r in gram):
            raise ValueError("gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")
        if any(gram[i][i] % 2 for i in range(n)):
            raise ValueError("gram matrix must be even")
        d, U, V = smith_normal_form(gram)
        if any(x == 0 for x in d):
            raise ValueError("gram matrix must be nondegenerate")
        self.gram = gram
        self.n = n
        self.orders = tuple(d)
        self.card = math.prod(d)
        self.signature = signature_of_gram(gram)
        self._U = U
        self._Uinv = invert_unimodular(U)
        self._gram_inv = _rat_inverse_int(gram)
        # Hermitian extras, set by herm_disc
        self.herm_field: FieldDisc | None = None
        self.herm_gram: HermMatrix | None = None
        self._omega_mat = None

    # -- elements ----------------------------------------------------------

    def elements(self):
        return itertools.product(*(range(di) for di in self.orders))

    def zero(self):
        return (0,) * self.n

    def add(self, e1, e2):
        return tuple((a + b) % d for a, b, d in zip(e1, e2, self.orders))

    def neg(self, e):
        return tuple((-a) % d for a, d in zip(e, self.orders))

    def scalar_mul_int(self, c: int, e):
        return tuple((c * a) % d for a, d in zip(e, self.orders))

    def dual_vector(self, e) -> list[Fraction]:
        """A representative of the coset in L^vee, as rational coordinates."""
        x = [sum(self._Uinv[i][j] * e[j] for j in range(self.n)) for i in range(self.n)]
        return [
            sum(self._gram_inv[i][j] * x[j] for j in range(self.n))
            for i in range(self.n)
        ]

    def project(self, mu) -> tuple[int, ...]:
        """The class of a dual vector mu in L^vee (rational coordinates)."""
        x = [sum(Fraction(self.gram[i][j]) * Fraction(mu[j]) for j in range(self.n)) for i in range(self.n)]
        if any(xi.denominator != 1 for xi in x):
            raise ValueError("vector is not in the dual lattice")
        y = [sum(self._U[i][j] * int(x[j]) for j in range(self.n)) for i in range(self.n)]
        return tuple(yi % d for yi, d in zip(y, self.orders))

    def q(self, e) -> Fraction:
        """Q(mu) mod 1 (the quadratic form gram[mu]/2 on the coset)."""
        mu = self.dual_vector(e)
        val = sum(
            Fraction(self.gram[i][j]) * mu[i] * mu[j] for i in range(self.n) for j in range(self.n)
        )
        return (val / 2) % 1

    def pairing(self, e1, e2) -> Fraction:
        """The bilinear pairing <mu, nu> mod 1."""
        mu, nu = self.dual_vector(e1), self.dual_vector(e2)
        val = sum(
            Fraction(self.gram[i][j]) * mu[i] * nu[j] for i in range(self.n) for j in range(self.n)
        )
        return val % 1

    # -- Hermitian structure -------------------------------------------------

    def _require_hermitian(self):
        if self.herm_field is None:
            raise ValueError("this discriminant form has no O_F-structure")

    def omega_act(self, e):
        """Multiplication by omega on the discriminant group."""
        self._require_hermitian()
        mu = self.dual_vector(e)
        W = self._omega_mat
        return self.project([sum(Fraction(W[i][j]) * mu[j] for j in range(self.n)) for i in range(self.n)])

    def scalar_mul(self, c, e):
        """Multiplication by c in O_F (an int or FieldElem)."""
        if isinstance(c, FieldElem):
            if not c.is_integral():
                raise ValueError("scalars must be integral")
            p, q = int(c.a), int(c.b)
            base = self.scalar_mul_int(p, e)
            if q:
                base = self.add(base, self.scalar_mul_int(q, self.omega_act(e)))
            return base
        return self.scalar_mul_int(int(c), e)

    def to_field_vector(self, e) -> list[FieldElem]:
        """The dual coset representative as a vector over F."""
        self._require_hermitian()
        K = self.herm_field
        mu = self.dual_vector(e)
        return [K(mu[2 * i], mu[2 * i + 1]) for i in range(self.n // 2)]

    def pairing_F(self, e1, e2) -> FieldElem:
        """The F-valued sesquilinear pairing <mu, nu> = mu^dagger G nu."""
        self._require_hermitian()
        v, w = self.to_field_vector(e1), self.to_field_vector(e2)
        G = self.herm_gram
        K = self.herm_field
        out = K.zero
        for i in range(len(v)):
            for j in range(len(w)):
                out = out + v[i].conj() * G[i, j] * w[j]
        return out

    @property
    def weil_signature(self) -> Fraction:
        """Half the Z-signature: for a positive definite Hermitian lattice of
        O_F-rank n this is the integer n, the paper's sgn(L) convention."""
        return Fraction(self.signature, 2)

    def __repr__(self):
        tag = f", disc {self.herm_field.D}" if self.herm_field else ""
        return f"DiscForm(orders={self.orders}, sgnZ={self.signature}{tag})"


def _rat_inverse_int(gram):
    n = len(gram)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(gram)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def disc_from_gram(gram) -> DiscForm:
    return DiscForm(gram)


def herm_disc(gram_of: HermMatrix, D: int | None = None) -> DiscForm:
    """Discriminant form of a positive definite Hermitian O_F-lattice via its
    trace-form Z-realization on the basis (1, omega) per coordinate."""
    if D is None:
        D = gram_of.D
    K = FieldDisc(D)
    if not gram_of.mat.is_integral():
        raise ValueError("Hermitian gram must be integral over O_F")
    if not gram_of.is_pd():
        raise ValueError("Hermitian gram must be positive definite")
    n = gram_of.g
    basis = [K.one, K.omega]
    S = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            for a in range(2):
                for b in range(2):
                    val = (basis[a].conj() * gram_of[i, j] * basis[b]).trace()
                    assert val.denominator == 1
                    S[2 * i + a][2 * j + b] = int(val)
    df = DiscForm(S)
    df.herm_field = K
    df.herm_gram = gram_of
    wn = (D * D - D) // 4
    W = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        W[2 * i][2 * i + 1] = -wn
        W[2 * i + 1][2 * i] = 1
        W[2 * i + 1][2 * i + 1] = D
    df._omega_mat = W
    return df


# ---------------------------------------------------------------------------
# generator matrices


@dataclass
class WeilGenMatrix:
    """A genus-g Weil representation generator: complex matrix on the basis
    e_mu, mu in disc^g (lexicographic order), plus the exact data the matrix
    was assembled from."""

    matrix: np.ndarray
    generator_tag: str
    exact: object = None

    def is_unitary(self, tol=1e-9) -> bool:
        m = self.matrix
        return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) < tol)


def _basis(df: DiscForm, g: int):
    elems = list(itertools.product(list(df.elements()), repeat=g))
    index = {mu: i for i, mu in enumerate(elems)}
    return elems, index


def _e(phase: Fraction) -> complex:
    return cmath.exp(2j * cmath.pi * float(phase))


def trans_phases(df: DiscForm, g: int, b) -> list[Fraction]:
    """Exact diagonal phases of rho(trans(b)): trace(b <mu, mu> / 2) mod 1.

    ``b`` is a symmetric integer matrix (Z-lattice forms) or a Hermitian
    matrix over O_F (Hermitian forms)."""
    elems, _ = _basis(df, g)
    phases = []
    if isinstance(b, HermMatrix):
        df._require_hermitian()
        if not b.mat.is_integral():
            raise ValueError("b must be integral")
        for mu in elems:
            # trace(b * P) with P_ij = <mu_i, mu_j> / 2
            val = Fraction(0)
            for i in range(g):
                for j in range(g):
                    val += (b[i, j] * df.pairing_F(mu[j], mu[i])).trace() / 2
            phases.append(val % 1)
    else:
        b = [[int(x) for x in row] for row in b]
        if any(b[i][j] != b[j][i] for i in range(g) for j in range(g)):
            raise ValueError("b must be symmetric")
        for mu in elems:
            val = Fraction(0)
            for i in range(g):
                val += b[i][i] * df.q(mu[i])
                for j in range(i + 1, g):
                    val += b[i][j] * df.pairing(mu[i], mu[j])
            phases.append(val % 1)
    return phases


def rho_trans(df: DiscForm, g: int, b) -> WeilGenMatrix:
    phases = trans_phases(df, g, b)
    mat = np.diag([_e(p) for p in phases]).astype(complex)
    return WeilGenMatrix(mat, "trans", exact=phases)


def _det_sign_power(det_conj_sign: int, exponent: Fraction) -> int:
    if det_conj_sign == 1:
        return 1
    if exponent.denominator != 1:
        raise ValueError(
            "rot with determinant -1 needs an integer signature convention (even Z-signature)"
        )
    return -1 if exponent.numerator % 2 else 1


def rho_rot(df: DiscForm, g: int, a) -> WeilGenMatrix:
    """The signed permutation e_mu -> det(conj a)^sgn e_{mu a^{-1}}."""
    if isinstance(a, Mat):
        df._require_hermitian()
        det = a.det()
        if not (det * det - FieldDisc(a.D).one).is_zero():
            raise ValueError("rot needs det(a)^2 = 1")
        det_sign = 1 if det == FieldDisc(a.D).one else -1
        ainv = a.inverse()
        if not ainv.is_integral():
            raise ValueError("a must be invertible over O_F")
        entries = [[ainv[i, j] for j in range(g)] for i in range(g)]
    else:
        a = [[int(x) for x in row] for row in a]
        det = _int_det(a)
        if det * det != 1:
            raise ValueError("rot needs det(a)^2 = 1")
        det_sign = det
        ainv = _int_inverse(a)
        entries = ainv
    sign = _det_sign_power(det_sign, df.weil_signature)
    elems, index = _basis(df, g)
    size = len(elems)
    mat = np.zeros((size, size), dtype=complex)
    perm = {}
    for mu in elems:
        # (mu a^{-1})_j = sum_i mu_i * (a^{-1})_{ij}
        img = tuple(
            _sum_elems(df, [df.scalar_mul(entries[i][j], mu[i]) for i in range(g)])
            for j in range(g)
        )
        perm[mu] = img
        mat[index[img], index[mu]] = sign
    return WeilGenMatrix(mat, "rot", exact=(perm, sign))


def _sum_elems(df, elems):
    out = df.zero()
    for e in elems:
        out = df.add(out, e)
    return out


def _int_det(a):
    n = len(a)
    if n == 0:
        return 1
    import itertools as it

    tot = 0
    for perm in it.permutations(range(n)):
        sign = 1
        seen = [False] * n
        # parity via cycle count
        p = list(perm)
        for i in range(n):
            if not seen[i]:
                j, clen = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
                    clen += 1
                if clen % 2 == 0:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= a[i][perm[i]]
        tot += sign * prod
    return tot


def _int_inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        aug[c] = [x / aug[c][c] for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not invertible over Z")
    return [[int(x) for x in row] for row in out]


def rho_sinv1(df: DiscForm, g: int) -> WeilGenMatrix:
    """Partial Fourier transform in the first coordinate:

        e_mu -> e(-sgn/4) / sqrt(card) sum_{mu_1'} e(-<mu_1, mu_1'>) e_{(mu_1', mu_2, ...)}

    where sgn is the weil_signature (half the Z-signature), matching the
    classical metaplectic normalization e(-sgn_Z / 8)."""
    elems, index = _basis(df, g)
    size = len(elems)
    const_phase = (-df.weil_signature / 4) % 1
    norm = _e(const_phase) / math.sqrt(df.card)
    single = list(df.elements())
    pair_phase = {
        (m1, n1): (-df.pairing(m1, n1)) % 1 for m1 in single for n1 in single
    }
    mat = np.zeros((size, size), dtype=complex)
    for mu in elems:
        for nu1 in single:
            target = (nu1,) + mu[1:]
            mat[index[target], index[mu]] += norm * _e(pair_phase[(mu[0], nu1)])
    return WeilGenMatrix(mat, "sinv1", exact=(const_phase, pair_phase))
