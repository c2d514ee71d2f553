"""Exact dense linear algebra over QQ or a cyclotomic field.

Plain row-list matrices; Gaussian elimination with first-nonzero pivoting
(deterministic), nullspace bases, linear solves and the characteristic
polynomial via the trace recursion of Faddeev-LeVerrier.
"""

from .upoly import UPoly


class Mat:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)])

    def copy(self):
        return Mat(self.field, self.rows)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __mul__(self, other):
        if isinstance(other, Mat):
            assert self.ncols == other.nrows
            z = self.field.zero
            bcols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for col in bcols:
                    s = z
                    for a, b in zip(r, col):
                        if a and b:
                            s = s + a * b
                    row.append(s)
                out.append(row)
            return Mat(self.field, out)
        return Mat(self.field, [[a * other for a in r] for r in self.rows])

    def __add__(self, other):
        return Mat(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Mat(self.field, [[a * c for a in r] for r in self.rows])

    def transpose(self):
        return Mat(self.field, [list(r) for r in zip(*self.rows)])

    def apply(self, vec):
        z = self.field.zero
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def trace(self):
        s = self.field.zero
        for i in range(self.nrows):
            s = s + self.rows[i][i]
        return s

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def __repr__(self):
        return "Mat(%d x %d over %r)" % (self.nrows, self.ncols, self.field)


def rref(field, rows):
    """Reduced row echelon form (in a copy).  Returns (rows, pivot_columns)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i][c]:
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = field.inv(A[r][c])
        A[r] = [a * inv for a in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                for j in range(c, n):
                    if Ar[j]:
                        Ai[j] = Ai[j] - f * Ar[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def kernel_basis(field, rows, ncols=None):
    """Basis of the right nullspace of the matrix, as a list of vectors."""
    if not rows:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    R, pivots = rref(field, rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * n
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def solve(field, rows, rhs):
    """One exact solution of A x = b (free variables set to 0), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(field, aug)
    n = len(rows[0]) if rows else 0
    if n in pivots:
        return None  # pivot in the constant column: inconsistent
    x = [field.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][-1]
    return x


def solve_matrix(field, A_rows, B_cols):
    """Solve A X = B column-by-column; B_cols is a list of rhs vectors.

    Returns list of solution vectors, or None if any column is inconsistent."""
    aug = [list(r) + [col[i] for col in B_cols] for i, r in enumerate(A_rows)]
    R, pivots = rref(field, aug)
    n = len(A_rows[0]) if A_rows else 0
    if any(p >= n for p in pivots):
        return None
    out = []
    for k in range(len(B_cols)):
        x = [field.zero] * n
        for i, pc in enumerate(pivots):
            x[pc] = R[i][n + k]
        out.append(x)
    return out


def rank(field, rows):
    if not rows:
        return 0
    return len(rref(field, rows)[0])


def charpoly(M):
    """Characteristic polynomial det(t*I - M) as a UPoly (monic).

    Faddeev-LeVerrier: exact over any field of characteristic zero."""
    field = M.field
    n = M.nrows
    assert n == M.ncols
    coeffs = [field.one]  # c_0 = 1 for t^n
    Mk = Mat.identity(field, n)
    for k in range(1, n + 1):
        AM = M * Mk
        ck = AM.trace() * field.inv(field.of(-k))
        coeffs.append(ck)
        if k < n:
            Mk = AM
            for i in range(n):
                Mk.rows[i][i] = Mk.rows[i][i] + ck
    return UPoly(field, list(reversed(coeffs)))


def det(M):
    """Determinant via the characteristic polynomial constant term."""
    n = M.nrows
    c0 = charpoly(M).c[0] if n else M.field.one
    return c0 if n % 2 == 0 else -c0
