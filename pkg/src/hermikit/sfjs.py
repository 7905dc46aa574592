"""Hermitian Jacobi expansions, symmetric formal Fourier-Jacobi series with
the GL-symmetry validator, Fourier-Jacobi slicing and cogenus raising,
Hermitian Jacobi theta series, the formal theta decomposition, and the
Hermitian lattice theta generator.

Coefficient values are rationals, cyclotomic numbers, or group-algebra
elements over disc(L)^g; the machinery only needs zero tests, addition,
sign scaling, and the rotation action, so all three share every code path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import CycNum, FieldDisc, FieldElem, HermMatrix, Mat
from .lattice import enumerate_quadratic
from .weil import DiscForm, herm_disc
from .znf import invert_unimodular, smith_normal_form

# ---------------------------------------------------------------------------
# coefficient modules


class GAElem:
    """A group-algebra value: finite formal sum of basis vectors e_mu with
    rational coefficients, mu running over tuples of discriminant form
    elements."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mu, c in (terms.items() if isinstance(terms, dict) else terms):
                c = Fraction(c)
                if c:
                    self.terms[mu] = self.terms.get(mu, Fraction(0)) + c
                    if not self.terms[mu]:
                        del self.terms[mu]

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out.get(mu, Fraction(0)) + c
        return GAElem(out)

    def scale(self, c):
        return GAElem({mu: Fraction(c) * v for mu, v in self.terms.items()})

    def permute(self, fn):
        return GAElem({fn(mu): v for mu, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GAElem):
            return NotImplemented
        return (self + other.scale(-1)).is_zero()

    __hash__ = None

    def __repr__(self):
        return "GAElem(" + ", ".join(f"{mu}: {c}" for mu, c in sorted(self.terms.items())) + ")"


def val_is_zero(v) -> bool:
    if isinstance(v, (GAElem, CycNum)):
        return v.is_zero()
    return Fraction(v) == 0


def val_eq(a, b) -> bool:
    if isinstance(a, GAElem) or isinstance(b, GAElem):
        return a == b
    if isinstance(a, CycNum) or isinstance(b, CycNum):
        a = a if isinstance(a, CycNum) else CycNum.from_rational(a)
        return a == b
    return Fraction(a) == Fraction(b)


def val_add(a, b):
    if isinstance(a, GAElem):
        return a + b
    if isinstance(a, CycNum) or isinstance(b, CycNum):
        a = a if isinstance(a, CycNum) else CycNum.from_rational(a)
        return a + b
    return Fraction(a) + Fraction(b)


def val_scale(v, c):
    if isinstance(v, GAElem):
        return v.scale(c)
    if isinstance(v, CycNum):
        return v * CycNum.from_rational(c)
    return Fraction(v) * Fraction(c)


# ---------------------------------------------------------------------------
# expansions and series


def full_index(n: HermMatrix, r: Mat, m: HermMatrix) -> HermMatrix:
    return HermMatrix.from_blocks(n, r, m)


class HermJacobiExpansion:
    """Truncated Fourier expansion of a Hermitian Jacobi form of genus
    g-h = genus_base and cogenus h: coefficients keyed by (n, r) with n
    Hermitian of size genus_base and r an h x genus_base matrix over the
    inverse different.  truncation bounds trace(t) of the full index."""

    def __init__(self, genus_base, cogenus, weight, index: HermMatrix, coeffs, truncation, check_support=True):
        self.genus_base = genus_base
        self.cogenus = cogenus
        self.weight = weight
        self.index = index
        self.truncation = Fraction(truncation)
        self.coeffs = {}
        for (n, r), v in coeffs.items():
            if val_is_zero(v):
                continue
            if check_support and not full_index(n, r, index).is_psd():
                raise ValueError(f"coefficient at non-PSD index (n={n}, r={r})")
            self.coeffs[(n, r)] = v

    def coefficient(self, n, r):
        return self.coeffs.get((n, r))

    def ord(self):
        """Minimal trace(n) with a nonzero coefficient (+inf when empty)."""
        traces = [n.trace() for (n, r), v in self.coeffs.items() if not val_is_zero(v)]
        import math

        return min(traces) if traces else math.inf


def cusp_support_check(phi: HermJacobiExpansion) -> bool:
    """True iff every stored nonzero coefficient has positive definite full
    index."""
    for (n, r), v in phi.coeffs.items():
        if val_is_zero(v):
            continue
        if not full_index(n, r, phi.index).is_pd():
            return False
    return True


@dataclass
class SFJSeries:
    """A truncated formal Fourier-Jacobi series: a coefficient map on full
    indices t in the trace ball trace(t) <= trunc_trace, with genus/cogenus
    bookkeeping and an abstract coefficient module."""

    disc: int
    genus: int
    cogenus: int
    weight: int
    coeffs: dict
    trunc_trace: Fraction
    level: int = 1
    module: str = "rational"  # rational | cyc | disc-algebra
    discform: DiscForm | None = field(default=None, repr=False)

    def __post_init__(self):
        # cogenus 0 is allowed as a plain container (no Fourier-Jacobi split)
        if not 0 <= self.cogenus < self.genus:
            raise ValueError("need 0 <= cogenus < genus")
        self.trunc_trace = Fraction(self.trunc_trace)
        self.coeffs = {t: v for t, v in self.coeffs.items() if not val_is_zero(v)}
        if self.module == "disc-algebra" and self.discform is None:
            raise ValueError("disc-algebra valued series needs its DiscForm")

    def coefficient(self, t: HermMatrix):
        return self.coeffs.get(t)

    def fj(self) -> dict[HermMatrix, HermJacobiExpansion]:
        """The Fourier-Jacobi view: group coefficients by the bottom-right
        cogenus block."""
        groups: dict[HermMatrix, dict] = {}
        for t, v in self.coeffs.items():
            n, r, m = t.block_decompose(self.cogenus)
            groups.setdefault(m, {})[(n, r)] = v
        return {
            m: HermJacobiExpansion(
                self.genus - self.cogenus, self.cogenus, self.weight, m, cs, self.trunc_trace,
                check_support=False,
            )
            for m, cs in groups.items()
        }

    def cusp_filter(self) -> SFJSeries:
        """The sub-series supported on positive definite indices; symmetry is
        preserved because t > 0 iff t[a] > 0."""
        kept = {t: v for t, v in self.coeffs.items() if t.is_pd()}
        return SFJSeries(
            self.disc, self.genus, self.cogenus, self.weight, kept, self.trunc_trace,
            self.level, self.module, self.discform,
        )


def fj_slice(coeffs, h: int, *, disc, genus, weight, trunc_trace, level=1, module="rational", discform=None) -> SFJSeries:
    """Regroup a flat coefficient map t -> value as a cogenus-h series."""
    return SFJSeries(disc, genus, h, weight, dict(coeffs), trunc_trace, level, module, discform)


def raise_cogenus(f: SFJSeries, h2: int) -> SFJSeries:
    """Change the cogenus bookkeeping; the identity on Fourier coefficients."""
    if not 0 < h2 < f.genus:
        raise ValueError("need 0 < cogenus < genus")
    return SFJSeries(f.disc, f.genus, h2, f.weight, dict(f.coeffs), f.trunc_trace, f.level, f.module, f.discform)


# ---------------------------------------------------------------------------
# GL_g(O_F) generators and the symmetry validator


def gl_generators(g: int, D: int) -> list[Mat]:
    """Permutations, unit diagonal matrices with square-one determinant, and
    elementary matrices e_ij(r), r in {1, omega}; every output has
    det(a)^2 = 1 and an integral inverse."""
    K = FieldDisc(D)
    gens: list[Mat] = []
    seen = set()

    def push(u: Mat):
        det = u.det()
        assert (det * det - K.one).is_zero()
        if u not in seen and u != Mat.identity(g, D):
            seen.add(u)
            gens.append(u)

    for perm in itertools.permutations(range(g)):
        push(Mat([[K.one if perm[i] == j else K.zero for j in range(g)] for i in range(g)], D))
    for combo in itertools.product(K.units(), repeat=g):
        det = combo[0]
        for c in combo[1:]:
            det = det * c
        if (det * det - K.one).is_zero():
            push(Mat([[combo[i] if i == j else K.zero for j in range(g)] for i in range(g)], D))
    for i in range(g):
        for j in range(g):
            if i != j:
                for r in (K.one, K.omega):
                    rows = [[K.one if a == b else K.zero for b in range(g)] for a in range(g)]
                    rows[i][j] = r
                    push(Mat(rows, D))
    return gens


def _det_sign(a: Mat) -> int:
    K = FieldDisc(a.D)
    det = a.det()
    if det == K.one:
        return 1
    if det == -K.one:
        return -1
    raise ValueError("generator must have determinant +-1")


def _rot_value_transform(value, a: Mat, k: int, discform: DiscForm | None):
    """det(conj a)^k rho(rot(a))^{-1} applied to a coefficient value."""
    sign = _det_sign(a)
    if discform is None:
        return val_scale(value, sign**k)
    sgn = discform.weil_signature
    exponent = Fraction(k) - sgn
    if exponent.denominator != 1:
        raise ValueError("weight minus signature must be integral for exact checks")
    scalar = sign ** (int(exponent) % 2)
    g = a.nrows
    entries = [[a[i, j] for j in range(g)] for i in range(g)]

    def act(mu):
        out = []
        for j in range(g):
            s = discform.zero()
            for i in range(g):
                s = discform.add(s, discform.scalar_mul(entries[i][j], mu[i]))
            out.append(s)
        return tuple(out)

    return value.permute(act).scale(scalar)


@dataclass
class SymmetryReport:
    ok: bool
    violations: list
    checked: int
    skipped: int
    total_indices: int

    @property
    def coverage(self) -> float:
        pairs = self.checked + self.skipped
        return self.checked / pairs if pairs else 1.0


def symmetry_check(f: SFJSeries, generators=None) -> SymmetryReport:
    """Check c(f; t[a]) = det(conj a)^k rho(rot(a))^{-1} c(f; t) for every
    stored index t and generator a, whenever both t and t[a] lie inside the
    truncation ball.  Pairs leaving the ball are reported as skipped, never
    silently dropped."""
    gens = generators if generators is not None else gl_generators(f.genus, f.disc)
    violations = []
    checked = skipped = 0
    for t, v in f.coeffs.items():
        for a in gens:
            ta = t.act(a)
            if ta.trace() > f.trunc_trace:
                skipped += 1
                continue
            checked += 1
            expect = _rot_value_transform(v, a, f.weight, f.discform if f.module == "disc-algebra" else None)
            actual = f.coeffs.get(ta)
            if actual is None:
                if not val_is_zero(expect):
                    violations.append((t, a, "missing orbit partner"))
            elif not val_eq(actual, expect):
                violations.append((t, a, "value mismatch"))
    return SymmetryReport(not violations, violations, checked, skipped, len(f.coeffs))


# ---------------------------------------------------------------------------
# Hermitian coset groups disc(m)^(g-h)


class HermCosetGroup:
    """The finite quotient (1/N) Mat_{h,c}(D_F^-1) / m Mat_{h,c}(O_F) for
    positive definite m, with canonical representatives shared by the theta
    series and the theta decomposition.  N = 1 is the level-one case of the
    Fourier index lattice."""

    def __init__(self, m: HermMatrix, cols: int, D: int | None = None, level: int = 1):
        if D is None:
            D = m.D
        if not m.is_pd():
            raise ValueError("index must be positive definite")
        self.m = m
        self.cols = cols
        self.D = D
        self.level = level
        K = FieldDisc(D)
        h = m.g
        b1, b2 = K.inv_different_basis()
        b1, b2 = b1 * Fraction(1, level), b2 * Fraction(1, level)
        self._b1, self._b2 = b1, b2
        # column space: F-vectors of size h; numerator Z-basis N_j, denominator
        # Z-basis the columns of m times (1, omega) per coordinate
        self._num_basis = []
        for i in range(h):
            for b in (b1, b2):
                vec = [K.zero] * h
                vec[i] = b
                self._num_basis.append(vec)
        self._den_basis = []
        for i in range(h):
            for b in (K.one, K.omega):
                self._den_basis.append([m[j, i] * b for j in range(h)])
        # denominator in numerator coordinates: integer matrix
        M = [[None] * (2 * h) for _ in range(2 * h)]
        for cidx, den in enumerate(self._den_basis):
            coords = self._to_num_coords(den)
            for ridx in range(2 * h):
                if coords[ridx].denominator != 1:
                    raise ValueError("denominator lattice does not embed integrally")
                M[ridx][cidx] = int(coords[ridx])
        d, U, V = smith_normal_form(M)
        self.orders = tuple(d)
        self.order = 1
        for x in d:
            self.order *= abs(x)
        self._U = U
        self._Uinv = invert_unimodular(U)

    def _to_num_coords(self, fvec) -> list[Fraction]:
        # solve fvec = sum_j c_j num_basis[j]; basis is (b1, b2) per slot
        b1, b2 = self._b1, self._b2
        det = b1.a * b2.b - b1.b * b2.a
        out = []
        for x in fvec:
            c1 = (x.a * b2.b - x.b * b2.a) / det
            c2 = (b1.a * x.b - b1.b * x.a) / det
            out.extend([c1, c2])
        return out

    def _from_num_coords(self, coords) -> list[FieldElem]:
        K = FieldDisc(self.D)
        h = self.m.g
        out = []
        for i in range(h):
            out.append(coords[2 * i] * self._num_basis[2 * i][i] + coords[2 * i + 1] * self._num_basis[2 * i + 1][i])
        return out

    def project_col(self, fvec) -> tuple[int, ...]:
        coords = self._to_num_coords(list(fvec))
        if any(c.denominator != 1 for c in coords):
            raise ValueError("vector is not in the inverse-different lattice")
        y = [sum(self._U[i][j] * int(coords[j]) for j in range(len(coords))) for i in range(len(coords))]
        return tuple(yi % d if d else yi for yi, d in zip(y, self.orders))

    def rep_col(self, cls) -> list[FieldElem]:
        coords = [sum(self._Uinv[i][j] * cls[j] for j in range(len(cls))) for i in range(len(cls))]
        return self._from_num_coords([Fraction(c) for c in coords])

    def elements_col(self):
        return itertools.product(*(range(d) for d in self.orders))

    def elements(self):
        return itertools.product(self.elements_col(), repeat=self.cols)

    def project(self, r: Mat) -> tuple:
        return tuple(
            self.project_col([r[i, c] for i in range(self.m.g)]) for c in range(self.cols)
        )

    def rep(self, cls) -> Mat:
        cols = [self.rep_col(c) for c in cls]
        return Mat([[cols[c][i] for c in range(self.cols)] for i in range(self.m.g)], self.D)


def disc_index_group(m: HermMatrix, cols: int, D: int | None = None, level: int = 1) -> HermCosetGroup:
    return HermCosetGroup(m, cols, D, level)


def index_level(t: HermMatrix) -> int:
    """The least N with t in (1/N) MatD_g(O_F)^vee."""
    import math as _math

    K = FieldDisc(t.D)
    N = 1
    for i in range(t.g):
        N = _math.lcm(N, t[i, i].as_rational().denominator)
        for j in range(t.g):
            if i != j:
                x = t[i, j]
                N = _math.lcm(N, x.trace().denominator, (x * K.omega).trace().denominator)
    return N


# ---------------------------------------------------------------------------
# theta series


def _herm_inv_form(m: HermMatrix):
    """The positive definite real quadratic form v -> v^dagger m^{-1} v on
    column F-vectors, as a rational Gram matrix on inverse-different
    numerator coordinates."""
    K = FieldDisc(m.D)
    minv = m.mat.inverse()
    b1, b2 = K.inv_different_basis()
    h = m.g
    basis = []
    for i in range(h):
        for b in (b1, b2):
            vec = [K.zero] * h
            vec[i] = b
            basis.append(vec)

    def hval(v, w) -> FieldElem:
        out = K.zero
        for i in range(h):
            for j in range(h):
                out = out + v[i].conj() * minv[i, j] * w[j]
        return out

    n = 2 * h
    gram = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            gram[a][b] = (hval(basis[a], basis[b]) + hval(basis[b], basis[a])).as_rational() / 2
    return gram, basis, hval


def herm_theta(m: HermMatrix, mu, cols: int, trunc, level: int = 1) -> HermJacobiExpansion:
    """The Hermitian Jacobi theta series of positive definite index m and
    characteristic mu (a coset class of disc_index_group(m, cols, level)):

        sum over r in mu + m Mat(O_F) of e(m^{-1}[r] tau_1 + r^T z + conj(r)^T w)

    truncated at trace(m^{-1}[r]) <= trunc.  Weight is the size of m."""
    group = disc_index_group(m, cols, level=level)
    if not isinstance(mu, tuple):
        mu = group.project(mu)
    trunc = Fraction(trunc)
    gram, basis, hval = _herm_inv_form(m)
    K = FieldDisc(m.D)
    minv = m.mat.inverse()
    h = m.g

    per_col = []
    for c in range(cols):
        rep = group.rep_col(mu[c])
        shift = group._to_num_coords(rep)
        # r_col = rep + sum y_j den_j ; in numerator coords the denominator
        # basis columns are integral, so enumerate y over that sublattice
        den_coords = [group._to_num_coords(dv) for dv in group._den_basis]
        n = 2 * h
        sub_gram = [
            [
                sum(den_coords[a][i] * gram[i][j] * den_coords[b][j] for i in range(n) for j in range(n))
                for b in range(n)
            ]
            for a in range(n)
        ]
        # affine offset: rep in denominator coordinates (rational solve)
        shift_den = _solve_rational([[den_coords[b][i] for b in range(n)] for i in range(n)], shift)
        vecs = []
        for y, _ in enumerate_quadratic(sub_gram, trunc, shift=shift_den):
            fvec = [rep[i] for i in range(h)]
            for j, yj in enumerate(y):
                for i in range(h):
                    fvec[i] = fvec[i] + yj * group._den_basis[j][i]
            vecs.append(fvec)
        per_col.append(vecs)

    coeffs = {}
    for combo in itertools.product(*per_col):
        r = Mat([[combo[c][i] for c in range(cols)] for i in range(h)], m.D)
        n_block = HermMatrix(r.dagger() * minv * r)
        if n_block.trace() <= trunc:
            key = (n_block, r)
            coeffs[key] = val_add(coeffs.get(key, Fraction(0)), Fraction(1))
    return HermJacobiExpansion(cols, h, h, m, coeffs, trunc + m.trace(), check_support=False)


def _solve_rational(A, b):
    """Solve A x = b exactly for square rational A."""
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        aug[c] = [x / aug[c][c] for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n] for row in aug]


# ---------------------------------------------------------------------------
# Hermitian lattice theta: the Kudla-style generating data


def herm_lattice_theta(G: HermMatrix, g: int, trunc, cogenus: int | None = None) -> SFJSeries:
    """The group-algebra valued generating series of lattice representation
    numbers: c(t) = sum_mu N(mu, t) e_mu with

        N(mu, t) = # { lambda in (mu + L^g) : (1/2) <lambda, lambda> = t },

    enumerated exactly over the Z-realization within trace(t) <= trunc.
    The declared weight is sgn(L), the O_F-rank for definite lattices."""
    if cogenus is None:
        cogenus = g - 1
    df = herm_disc(G)
    K = df.herm_field
    n_of = G.g
    trunc = Fraction(trunc)
    S = df.gram
    Sinv = df._gram_inv
    nz = 2 * n_of

    # dual vectors with (1/2)H(lambda, lambda) = S[x]/4 <= trunc, x = Sinv w
    col_vectors = []
    for w, val in enumerate_quadratic(Sinv, 4 * trunc):
        x = [sum(Sinv[i][j] * w[j] for j in range(nz)) for i in range(nz)]
        fvec = [K(x[2 * i], x[2 * i + 1]) for i in range(n_of)]
        cls = df.project(x)
        col_vectors.append((fvec, cls, val / 4))
    col_vectors.sort(key=lambda t: t[2])

    def hpair(v, w) -> FieldElem:
        out = K.zero
        for i in range(n_of):
            for j in range(n_of):
                out = out + v[i].conj() * G[i, j] * w[j]
        return out

    coeffs: dict[HermMatrix, dict] = {}

    def rec(cols, remaining):
        if len(cols) == g:
            entries = [[None] * g for _ in range(g)]
            for i in range(g):
                for j in range(i, g):
                    val = hpair(cols[i][0], cols[j][0])
                    entries[i][j] = val * Fraction(1, 2)
                    entries[j][i] = entries[i][j].conj()
            t = HermMatrix(Mat(entries, G.D))
            mu = tuple(c[1] for c in cols)
            coeffs.setdefault(t, {})[mu] = coeffs.get(t, {}).get(mu, Fraction(0)) + 1
            return
        for vec in col_vectors:
            if vec[2] > remaining:
                break
            cols.append(vec)
            rec(cols, remaining - vec[2])
            cols.pop()

    rec([], trunc)
    values = {t: GAElem(d) for t, d in coeffs.items()}
    return SFJSeries(
        G.D, g, cogenus, int(df.weil_signature), values, trunc,
        module="disc-algebra", discform=df,
    )


# ---------------------------------------------------------------------------
# formal theta decomposition


@dataclass
class ThetaComponent:
    """One component f~_mu' of a formal theta decomposition: a map from
    Hermitian exponent matrices n' - m'^{-1}[r'(mu')] to module values."""

    mu: tuple
    expansion: dict
    index: HermMatrix


def theta_decompose(f: SFJSeries, m_prime: HermMatrix, require_cusp: bool = True) -> list[ThetaComponent]:
    """Decompose the cogenus-(h-1) Fourier-Jacobi coefficient psi_{m'} of a
    symmetric series as sum_{mu'} f~_{mu'} theta_{m', mu'}.

    For every stored t with bottom-right block m' whose bottom-left block is
    the canonical representative r'(mu'), the coefficient lands in component
    mu' at exponent n' - m'^{-1}[r'(mu')]; the symmetry relation
    c(f; t) = c(f; t[u_lambda]) makes this a faithful regrouping.
    """
    h = f.cogenus
    g = f.genus
    if not 1 < h < g:
        raise ValueError("theta decomposition needs 1 < h < g")
    if m_prime.g != h - 1:
        raise ValueError("m' must have size h-1")
    if not m_prime.is_pd():
        raise ValueError("m' must be positive definite")
    if require_cusp:
        for t in f.coeffs:
            if not t.is_pd():
                raise ValueError("theta_decompose expects a cuspidal series (use cusp_filter)")
    base = g - h + 1
    group = disc_index_group(m_prime, base)
    reps = {cls: group.rep(cls) for cls in group.elements()}
    minv = m_prime.mat.inverse()
    components = {cls: {} for cls in reps}
    for t, v in f.coeffs.items():
        n2, r2, m2 = t.block_decompose(h - 1)
        if m2 != m_prime:
            continue
        cls = group.project(r2)
        if r2 != reps[cls]:
            continue
        expo = HermMatrix(n2.mat - (r2.dagger() * minv * r2))
        if expo in components[cls]:
            components[cls][expo] = val_add(components[cls][expo], v)
        else:
            components[cls][expo] = v
    return [ThetaComponent(cls, comp, m_prime) for cls, comp in sorted(components.items())]


def theta_reassemble(components, m_prime: HermMatrix, trunc) -> dict:
    """Expand sum_{mu'} f~_{mu'} theta_{m', mu'} back into a coefficient map
    on full indices with bottom-right block m', inside trace(t) <= trunc."""
    trunc = Fraction(trunc)
    out = {}
    minv = m_prime.mat.inverse()
    for comp in components:
        if not comp.expansion:
            continue
        base = next(iter(comp.expansion)).g
        theta = herm_theta(m_prime, comp.mu, base, trunc)
        for (n_th, r), one in theta.coeffs.items():
            for expo, v in comp.expansion.items():
                n2 = HermMatrix(expo.mat + (r.dagger() * minv * r))
                t = full_index(n2, r, m_prime)
                if t.trace() <= trunc:
                    scaled = val_scale(v, Fraction(one) if not isinstance(one, (GAElem, CycNum)) else 1)
                    out[t] = val_add(out[t], scaled) if t in out else scaled
    return {t: v for t, v in out.items() if not val_is_zero(v)}
