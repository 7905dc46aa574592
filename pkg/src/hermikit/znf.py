"""Integer and rational matrix normal forms: Smith normal form with
transformation matrices, kernel saturation, and unimodular basis completion.

Everything here works on plain Python lists of ints / Fractions; sizes are
small (at most a few dozen rows), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def smith_normal_form(mat):
    """Return (d, U, V) with U*mat*V = diag(d), U, V unimodular over Z.

    ``d`` is the list of diagonal entries (non-negative, each dividing the
    next, trailing zeros for rank deficiency).
    """
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U, V = _eye(rows), _eye(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    n = min(rows, cols)
    for s in range(n):
        while True:
            # move a least nonzero entry of the trailing block to (s, s)
            pos = None
            best = None
            for i in range(s, rows):
                for j in range(s, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < best):
                        best, pos = abs(a[i][j]), (i, j)
            if pos is None:
                break
            if pos[0] != s:
                swap_rows(s, pos[0])
            if pos[1] != s:
                swap_cols(s, pos[1])
            if a[s][s] < 0:
                negate_row(s)
            dirty = False
            for i in range(s + 1, rows):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    add_row(s, i, -q)
                    if a[i][s]:
                        dirty = True
            for j in range(s + 1, cols):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    add_col(s, j, -q)
                    if a[s][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility sweep: a[s][s] must divide the trailing block
            offender = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if a[i][j] % a[s][s]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, s, 1)

    d = [a[i][i] for i in range(n)]
    return d, U, V


def rational_kernel(mat):
    """Basis of the rational (right) kernel of a matrix with Fraction entries,
    returned as integer vectors cleared of denominators."""
    rows = [list(map(Fraction, r)) for r in mat]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        basis.append([int(x * lcm) for x in vec])
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def saturate(vectors, n):
    """Saturation of the lattice spanned by integer ``vectors`` inside Z^n:
    a basis of (span_Q intersect Z^n)."""
    if not vectors:
        return []
    d, U, V = smith_normal_form(vectors)
    k = sum(1 for x in d if x)
    # rows of V^-1 scaled: span_Q(vectors) = span_Q(first k rows of V^T inverse);
    # the saturated lattice has basis the first k rows of (V^-1)^T read off from
    # U * mat * V = D  =>  mat = U^-1 D V^-1; saturation basis: rows of V^-1
    # indexed by nonzero d, with the d divided out.
    Vinv = invert_unimodular(V)
    return [list(Vinv[i]) for i in range(k)]


def invert_unimodular(M):
    """Inverse of a unimodular integer matrix, exactly, as integer matrix."""
    n = len(M)
    a = [list(map(Fraction, row)) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def complete_to_unimodular(vectors, n):
    """Extend a basis of a saturated (primitive) sublattice of Z^n to a basis
    of Z^n.  Returns an n x n unimodular matrix whose FIRST rows are the
    given vectors."""
    if not vectors:
        return _eye(n)
    k = len(vectors)
    d, U, V = smith_normal_form(vectors)
    if any(x != 1 for x in d[:k]):
        raise ValueError("sublattice is not saturated")
    # vectors = U^-1 [I_k 0] V^-1: rows of V^-1 extend U^-1-combinations of the
    # vectors; glue U back in to make the first k rows exactly ``vectors``.
    Vinv = invert_unimodular(V)
    Uinv = invert_unimodular(U)
    top = mat_mul(Uinv, Vinv[:k])  # = vectors
    assert top == [list(map(int, v)) for v in vectors]
    return top + [list(r) for r in Vinv[k:]]


def kernel_completion(mat):
    """For a rational matrix m (as rows of Fractions), return a unimodular
    integer matrix u such that the LAST columns of u span ker(m) in Z^n.

    Used for pseudo-determinant style splits m[u] = diag(m', 0)."""
    n = len(mat[0])
    ker = rational_kernel(mat)
    if not ker:
        return _eye(n)
    sat = saturate(ker, n)
    full = complete_to_unimodular(sat, n)
    k = len(sat)
    # rows of ``full``: first k span kernel; we want them as the last columns
    order = list(range(k, n)) + list(range(k))
    return [[full[order[j]][i] for j in range(n)] for i in range(n)]
