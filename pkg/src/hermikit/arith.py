"""Exact arithmetic in an imaginary quadratic field, cyclotomic phase values,
and Hermitian matrices with dual-lattice and positivity tests.

Elements of F = Q(sqrt(D)) are stored in the 1, omega basis with
omega = (D + sqrt(D))/2, so the ring of integers is exactly the set of
integer coordinate pairs for both D = 0 and D = 1 mod 4.  No floats are
used anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class FieldDisc:
    """An imaginary quadratic field, identified by its discriminant D < 0."""

    D: int

    def __post_init__(self):
        if self.D >= 0 or self.D % 4 not in (0, 1):
            raise ValueError(f"{self.D} is not an imaginary quadratic discriminant")

    # omega + conj(omega) and omega * conj(omega)
    @property
    def omega_trace(self) -> int:
        return self.D

    @property
    def omega_norm(self) -> Fraction:
        return Fraction(self.D * self.D - self.D, 4)

    def __call__(self, a, b=0) -> FieldElem:
        return FieldElem(_rat(a), _rat(b), self.D)

    @property
    def zero(self) -> FieldElem:
        return self(0)

    @property
    def one(self) -> FieldElem:
        return self(1)

    @property
    def omega(self) -> FieldElem:
        return self(0, 1)

    def units(self) -> tuple[FieldElem, ...]:
        """All units of O_F; more than {1, -1} only for D = -4 and D = -3."""
        one = self.one
        units = [one, -one]
        if self.D == -4:
            # omega = -2 + i, so i = omega + 2
            i = self(2, 1)
            units += [i, -i]
        if self.D == -3:
            # omega = (-3 + sqrt(-3))/2 is a primitive 6th root times -1 shift:
            # zeta_6 = (1 + sqrt(-3))/2 = omega + 2
            z6 = self(2, 1)
            units += [z6, -z6, z6 * z6, -(z6 * z6)]
        return tuple(units)

    def inv_different_basis(self) -> tuple[FieldElem, FieldElem]:
        """Z-basis of the inverse different (1/sqrt(D)) O_F."""
        # sqrt(D) = 2 omega - D, and 1/sqrt(D) = (2 omega - D)/D.
        inv_sqrt = self(Fraction(-1), Fraction(2, self.D))
        return (inv_sqrt, inv_sqrt * self.omega)


@dataclass(frozen=True)
class FieldElem:
    """a + b*omega with rational a, b, for the field of discriminant D."""

    a: Fraction
    b: Fraction
    D: int

    def _check(self, other: FieldElem):
        if self.D != other.D:
            raise ValueError("field elements from different fields")

    @property
    def field(self) -> FieldDisc:
        return FieldDisc(self.D)

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return FieldElem(self.a + other.a, self.b + other.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(_rat(other), Fraction(0), self.D)
        raise TypeError(f"cannot coerce {other!r} into Q(sqrt({self.D}))")

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        # omega^2 = D*omega - (D^2 - D)/4
        D = self.D
        wn = Fraction(D * D - D, 4)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return FieldElem(a1 * a2 - b1 * b2 * wn, a1 * b2 + b1 * a2 + b1 * b2 * D, D)

    __rmul__ = __mul__

    def conj(self) -> FieldElem:
        """Galois conjugate: a + b*omega -> (a + b*D) - b*omega."""
        return FieldElem(self.a + self.b * self.D, -self.b, self.D)

    def trace(self) -> Fraction:
        return 2 * self.a + self.b * self.D

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b * self.D + self.b * self.b * Fraction(self.D * self.D - self.D, 4)

    def inverse(self) -> FieldElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        c = self.conj()
        return FieldElem(c.a / n, c.b / n, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def is_integral(self) -> bool:
        """Membership in O_F = Z + Z*omega."""
        return self.a.denominator == 1 and self.b.denominator == 1

    def in_inverse_different(self) -> bool:
        """True iff trace(x*y) is integral for y in {1, omega}."""
        t1 = self.trace()
        t2 = (self * FieldDisc(self.D).omega).trace()
        return t1.denominator == 1 and t2.denominator == 1

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*w)"


def conj(x: FieldElem) -> FieldElem:
    return x.conj()


def trace_norm(x: FieldElem) -> tuple[Fraction, Fraction]:
    return x.trace(), x.norm()


def in_inverse_different(x: FieldElem) -> bool:
    return x.in_inverse_different()


# ---------------------------------------------------------------------------
# cyclotomic phase values


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, by exact division
    of x^n - 1 through all lower cyclotomic polynomials."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(_cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        out[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return out


def _poly_mod(poly: list[Fraction], mod: tuple[Fraction, ...]) -> list[Fraction]:
    poly = list(poly)
    dm = len(mod) - 1
    for k in range(len(poly) - 1, dm - 1, -1):
        c = poly[k] / mod[-1]
        if c:
            for i, mc in enumerate(mod):
                poly[k - dm + i] -= c * mc
    return poly[:dm]


class CycNum:
    """An exact Q-linear combination of roots of unity e(p) = exp(2*pi*i*p).

    Phases are rationals reduced into [0, 1).  The representation is not
    canonical (e.g. 1 + e(1/3) + e(2/3) has three stored terms but is zero);
    zero is decided by reduction modulo the relevant cyclotomic polynomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[Fraction, Fraction] = {}
        if terms:
            for phase, coeff in (terms.items() if isinstance(terms, dict) else terms):
                phase = _rat(phase) % 1
                coeff = _rat(coeff)
                if coeff:
                    clean[phase] = clean.get(phase, Fraction(0)) + coeff
                    if not clean[phase]:
                        del clean[phase]
        self.terms = clean

    @staticmethod
    def from_rational(c) -> CycNum:
        return CycNum({Fraction(0): _rat(c)})

    @staticmethod
    def root_of_unity(phase) -> CycNum:
        return CycNum({_rat(phase): Fraction(1)})

    zero_hash = None  # CycNum is unhashable on purpose: equality is semantic
    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, Fraction(0)) + c
        return CycNum(merged)

    __radd__ = __add__

    def __neg__(self):
        return CycNum({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prod: dict[Fraction, Fraction] = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                p = (p1 + p2) % 1
                prod[p] = prod.get(p, Fraction(0)) + c1 * c2
        return CycNum(prod)

    __rmul__ = __mul__

    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other)
        raise TypeError(f"cannot coerce {other!r} into a cyclotomic number")

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        n = math.lcm(*(p.denominator for p in self.terms))
        poly = [Fraction(0)] * n
        for p, c in self.terms.items():
            poly[int(p * n)] += c
        return not any(_poly_mod(poly, _cyclotomic_poly(n)))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __bool__(self):
        return not self.is_zero()

    def as_rational(self) -> Fraction:
        red = self - CycNum.from_rational(self.terms.get(Fraction(0), Fraction(0)))
        if not red.is_zero():
            raise ValueError(f"{self} is not rational")
        return self.terms.get(Fraction(0), Fraction(0))

    def __complex__(self):
        return sum(
            complex(c) * complex(math.cos(2 * math.pi * p), math.sin(2 * math.pi * p))
            for p, c in self.terms.items()
        ) or complex(0)

    def __repr__(self):
        if not self.terms:
            return "CycNum(0)"
        parts = [f"{c}*e({p})" for p, c in sorted(self.terms.items())]
        return "CycNum(" + " + ".join(parts) + ")"


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_is_zero(x: CycNum) -> bool:
    return x.is_zero()


# ---------------------------------------------------------------------------
# matrices over F


class Mat:
    """A dense matrix over a fixed imaginary quadratic field.

    Entries are FieldElem; rows are tuples, so instances are immutable and
    hashable.  This is the workhorse behind Hermitian matrices, GL_g(O_F)
    generators, and the 2g x 2g unitary matrices.
    """

    __slots__ = ("rows", "D")

    def __init__(self, rows, D=None):
        rows = tuple(tuple(r) for r in rows)
        if not rows:
            if D is None:
                raise ValueError("empty matrix needs an explicit discriminant")
            self.rows, self.D = (), D
            return
        if D is None:
            D = rows[0][0].D
        self.rows = tuple(
            tuple(e if isinstance(e, FieldElem) else FieldElem(_rat(e), Fraction(0), D) for e in r)
            for r in rows
        )
        self.D = D
        if any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")
        if any(e.D != D for r in self.rows for e in r):
            raise ValueError("mixed fields in one matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(n: int, D: int) -> Mat:
        K = FieldDisc(D)
        return Mat([[K.one if i == j else K.zero for j in range(n)] for i in range(n)], D)

    @staticmethod
    def zero(n: int, m: int, D: int) -> Mat:
        K = FieldDisc(D)
        return Mat([[K.zero] * m for _ in range(n)], D)

    @staticmethod
    def from_rational_rows(rows, D: int) -> Mat:
        return Mat([[FieldElem(_rat(e), Fraction(0), D) for e in r] for r in rows], D)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("matrix size mismatch")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.D)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Mat([[-e for e in r] for r in self.rows], self.D)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return Mat([[e * other for e in r] for r in self.rows], self.D)
        if self.ncols != other.nrows:
            raise ValueError("matrix size mismatch")
        K = FieldDisc(self.D)
        return Mat(
            [
                [
                    sum((self.rows[i][k] * other.rows[k][j] for k in range(self.ncols)), K.zero)
                    for j in range(other.ncols)
                ]
                for i in range(self.nrows)
            ],
            self.D,
        )

    __rmul__ = __mul__

    def dagger(self) -> Mat:
        """Conjugate transpose."""
        return Mat(
            [[self.rows[j][i].conj() for j in range(self.nrows)] for i in range(self.ncols)],
            self.D,
        )

    def transpose(self) -> Mat:
        return Mat(
            [[self.rows[j][i] for j in range(self.nrows)] for i in range(self.ncols)],
            self.D,
        )

    def entrywise_conj(self) -> Mat:
        return Mat([[e.conj() for e in r] for r in self.rows], self.D)

    def matrix_trace(self) -> FieldElem:
        K = FieldDisc(self.D)
        return sum((self.rows[i][i] for i in range(self.nrows)), K.zero)

    def det(self) -> FieldElem:
        """Determinant by exact Gaussian elimination over the field."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        K = FieldDisc(self.D)
        if n == 0:
            return K.one
        a = [list(r) for r in self.rows]
        det = K.one
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                return K.zero
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = a[col][col].inverse()
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if not f.is_zero():
                    for c in range(col, n):
                        a[r][c] = a[r][c] - f * a[col][c]
        return det

    def inverse(self) -> Mat:
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        K = FieldDisc(self.D)
        a = [list(r) + list(Mat.identity(n, self.D).rows[i]) for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [e * inv for e in a[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Mat([r[n:] for r in a], self.D)

    def is_integral(self) -> bool:
        return all(e.is_integral() for r in self.rows for e in r)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def hstack(self, other: Mat) -> Mat:
        return Mat([list(r1) + list(r2) for r1, r2 in zip(self.rows, other.rows)], self.D)

    def submatrix(self, row_idx, col_idx) -> Mat:
        return Mat([[self.rows[i][j] for j in col_idx] for i in row_idx], self.D)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.D == other.D and self.rows == other.rows

    def __hash__(self):
        return hash((self.D, self.rows))

    def __repr__(self):
        return "Mat[" + "; ".join(", ".join(map(str, r)) for r in self.rows) + "]"


class HermMatrix:
    """A Hermitian g x g matrix over F, wrapping Mat with the symmetry check."""

    __slots__ = ("mat",)

    def __init__(self, mat: Mat):
        if mat.nrows != mat.ncols:
            raise ValueError("Hermitian matrix must be square")
        for i in range(mat.nrows):
            for j in range(i, mat.ncols):
                if not (mat[i, j].conj() - mat[j, i]).is_zero():
                    raise ValueError("matrix is not Hermitian")
        self.mat = mat

    @staticmethod
    def from_entries(rows, D: int) -> HermMatrix:
        K = FieldDisc(D)
        conv = [
            [e if isinstance(e, FieldElem) else K(e) for e in r]
            for r in rows
        ]
        return HermMatrix(Mat(conv, D))

    @staticmethod
    def zero(g: int, D: int) -> HermMatrix:
        return HermMatrix(Mat.zero(g, g, D))

    @staticmethod
    def identity(g: int, D: int) -> HermMatrix:
        return HermMatrix(Mat.identity(g, D))

    @property
    def g(self) -> int:
        return self.mat.nrows

    @property
    def D(self) -> int:
        return self.mat.D

    def __getitem__(self, ij):
        return self.mat[ij]

    def __add__(self, other):
        return HermMatrix(self.mat + other.mat)

    def __sub__(self, other):
        return HermMatrix(self.mat - other.mat)

    def __neg__(self):
        return HermMatrix(-self.mat)

    def scale(self, c) -> HermMatrix:
        return HermMatrix(self.mat * _rat(c))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.mat[i, i].as_rational() for i in range(self.g))

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def act(self, u: Mat) -> HermMatrix:
        """t[u] = u^dagger t u for any g x h matrix u over F."""
        if u.nrows != self.g:
            raise ValueError("matrix size mismatch in t[u]")
        return HermMatrix(u.dagger() * self.mat * u)

    def form_value(self, vec: list[FieldElem]) -> Fraction:
        """The Hermitian form value t[v] = v^dagger t v, a rational number."""
        col = Mat([[e] for e in vec], self.D)
        return self.act(col)[0, 0].as_rational()

    def trace_pair(self, other: HermMatrix) -> Fraction:
        """trace(t*s): the Q-valued trace form on Hermitian pairs."""
        return (self.mat * other.mat).matrix_trace().as_rational()

    def det(self) -> Fraction:
        return self.mat.det().as_rational()

    def _principal_minor(self, idx) -> Fraction:
        return self.mat.submatrix(idx, idx).det().as_rational()

    def is_pd(self) -> bool:
        """Exact positive definiteness via leading principal minors."""
        return all(self._principal_minor(range(k + 1)) > 0 for k in range(self.g))

    def is_psd(self) -> bool:
        """Exact positive semi-definiteness via all principal minors."""
        import itertools

        for k in range(1, self.g + 1):
            for idx in itertools.combinations(range(self.g), k):
                if self._principal_minor(idx) < 0:
                    return False
        return True

    def rank(self) -> int:
        """Exact rank (Gaussian elimination over F)."""
        a = [list(r) for r in self.mat.rows]
        n = self.g
        rank, col = 0, 0
        while rank < n and col < n:
            piv = next((r for r in range(rank, n) if not a[r][col].is_zero()), None)
            if piv is None:
                col += 1
                continue
            a[rank], a[piv] = a[piv], a[rank]
            inv = a[rank][col].inverse()
            for r in range(rank + 1, n):
                f = a[r][col] * inv
                if not f.is_zero():
                    for c in range(col, n):
                        a[r][c] = a[r][c] - f * a[rank][c]
            rank += 1
            col += 1
        return rank

    def block_decompose(self, h: int):
        """Split t into (n, r, m) with n of size g-h, m of size h, r the
        h x (g-h) bottom-left block, so t = [[n, r^dagger], [r, m]]."""
        g = self.g
        if not 0 <= h <= g:
            raise ValueError(f"block size h={h} out of range for g={g}")
        top = range(g - h)
        bot = range(g - h, g)
        n = HermMatrix(self.mat.submatrix(top, top))
        m = HermMatrix(self.mat.submatrix(bot, bot))
        r = self.mat.submatrix(bot, top)
        return n, r, m

    @staticmethod
    def from_blocks(n: HermMatrix, r: Mat, m: HermMatrix) -> HermMatrix:
        """Inverse of block_decompose."""
        D = m.D if m.g else n.D
        g = n.g + m.g
        K = FieldDisc(D)
        rows = [[K.zero] * g for _ in range(g)]
        for i in range(n.g):
            for j in range(n.g):
                rows[i][j] = n[i, j]
        for i in range(m.g):
            for j in range(m.g):
                rows[n.g + i][n.g + j] = m[i, j]
        for i in range(r.nrows):
            for j in range(r.ncols):
                rows[n.g + i][j] = r[i, j]
                rows[j][n.g + i] = r[i, j].conj()
        return HermMatrix(Mat(rows, D))

    def is_dual_member(self, N: int = 1) -> bool:
        """Membership in (1/N) MatD_g(O_F)^vee: diagonal in (1/N)Z and
        off-diagonal entries x with N*x in the inverse different."""
        for i in range(self.g):
            d = self.mat[i, i]
            if not d.is_rational() or (N * d.a).denominator != 1:
                return False
        for i in range(self.g):
            for j in range(self.g):
                if i != j and not (self.mat[i, j] * N).in_inverse_different():
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, HermMatrix) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return "Herm" + repr(self.mat)[3:]


def is_dual_member(t: HermMatrix, N: int = 1) -> bool:
    return t.is_dual_member(N)


def is_psd(t: HermMatrix) -> bool:
    return t.is_psd()


def is_pd(t: HermMatrix) -> bool:
    return t.is_pd()


def act(t: HermMatrix, u: Mat) -> HermMatrix:
    return t.act(u)


@dataclass(frozen=True)
class FourierIndex:
    """A Fourier index: a Hermitian matrix together with a denominator N,
    asserting membership in (1/N) MatD_g(O_F)^vee."""

    t: HermMatrix
    N: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("denominator must be positive")

    def is_valid(self) -> bool:
        return self.t.is_dual_member(self.N)

    def block_decompose(self, h: int):
        return self.t.block_decompose(h)

    def refined_subdivision(self, h: int):
        """The two-way subdivision used for cogenus transitions: blocks of
        sizes (g-h, 1, h-1) read against both groupings.

        Returns a dict with the coarse blocks for cogenus h and h-1.
        """
        g = self.t.g
        if not 1 <= h <= g - 1:
            raise ValueError("refined subdivision needs 1 <= h <= g-1")
        n, r, m = self.t.block_decompose(h)
        n2, r2, m2 = self.t.block_decompose(h - 1)
        return {"n": n, "r": r, "m": m, "n_prime": n2, "r_prime": r2, "m_prime": m2}


def block_decompose(t: FourierIndex | HermMatrix, h: int):
    if isinstance(t, FourierIndex):
        return t.t.block_decompose(h)
    return t.block_decompose(h)
