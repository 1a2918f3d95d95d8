"""Exact rational linear algebra: matrices, kernels, Veronese and cocircuit constructions.

Everything here is computed over `fractions.Fraction`; no floating point is
ever involved, so equality tests are exact. Ground-set elements and matrix
indices are 0-based throughout the library; textual interfaces translate to
the 1-based convention of the literature.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rational = Fraction


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QMatrix:
    """Dense matrix over Fraction. Immutable after construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = tuple(tuple(_q(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int):
        return self.data[i]

    def col(self, j: int):
        return tuple(r[j] for r in self.data)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "QMatrix":
        cols = tuple(col_idx)
        return QMatrix([[self.data[i][j] for j in cols] for i in row_idx])

    def transpose(self) -> "QMatrix":
        return QMatrix([self.col(j) for j in range(self.cols)])

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return QMatrix([self.data[i] + other.data[i] for i in range(self.rows)])

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(self.data[i], other.data[i])]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a - b for a, b in zip(self.data[i], other.data[i])]
                for i in range(self.rows)
            ]
        )

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ot = other.transpose().data
            return QMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in ot]
                    for row in self.data
                ]
            )
        c = _q(other)
        return QMatrix([[c * x for x in row] for row in self.data])

    __rmul__ = __mul__

    def scale_columns(self, scalars: Sequence) -> "QMatrix":
        if len(scalars) != self.cols:
            raise ValueError("scalar count mismatch")
        sc = [_q(s) for s in scalars]
        return QMatrix([[x * sc[j] for j, x in enumerate(row)] for row in self.data])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("det of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.data]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "QMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug, pivots, rk = rref(self.hstack(QMatrix.identity(n)))
        if rk < n:
            raise ValueError("matrix is singular")
        return aug.submatrix(range(n), range(n, 2 * n))

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"QMatrix({self.rows}x{self.cols}: {body})"


def rref(m: QMatrix):
    """Reduced row echelon form.

    Returns (R, pivots, rank) where pivots is the tuple of pivot column
    indices. Exact Gauss-Jordan; idempotent on its own output.
    """
    a = [list(row) for row in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return QMatrix(a), tuple(pivots), len(pivots)


def rank(m: QMatrix) -> int:
    return rref(m)[2]


def kernel_basis(m: QMatrix) -> list:
    """Basis of the right kernel, as a list of column vectors (tuples).

    Empty list iff m has full column rank.
    """
    r, pivots, rk = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r.data[i][f]
        basis.append(tuple(v))
    return basis


def veronese_pairs(k: int):
    """Row index order of the degree-2 Veronese: (i,j) with i <= j, lex."""
    return [(i, j) for i in range(k) for j in range(i, k)]


def multi_veronese(m: QMatrix) -> QMatrix:
    """Apply the degree-2 Veronese map to every column.

    Output has C(k+1,2) rows ordered by (i,j), i <= j, lexicographically;
    cross terms carry coefficient 1, so nu(M) @ lam = 0 iff
    M @ diag(lam) @ M^T = 0 entrywise.
    """
    pairs = veronese_pairs(m.rows)
    return QMatrix(
        [
            [m.data[i][c] * m.data[j][c] for c in range(m.cols)]
            for (i, j) in pairs
        ]
    )


def sym2(g: QMatrix) -> QMatrix:
    """Second symmetric power of a square matrix, in the veronese_pairs basis.

    Satisfies multi_veronese(G @ M) == sym2(G) @ multi_veronese(M).
    """
    if g.rows != g.cols:
        raise ValueError("sym2 of a non-square matrix")
    pairs = veronese_pairs(g.rows)
    out = []
    for (i, j) in pairs:
        row = []
        for (a, b) in pairs:
            if a == b:
                row.append(g.data[i][a] * g.data[j][a])
            else:
                row.append(g.data[i][a] * g.data[j][b] + g.data[i][b] * g.data[j][a])
        out.append(row)
    return QMatrix(out)


class PlueckerVector:
    """Maximal minors of a full-rank k x n matrix, indexed by sorted k-subsets."""

    __slots__ = ("k", "n", "coords")

    def __init__(self, k: int, n: int, coords: dict):
        self.k = k
        self.n = n
        self.coords = {tuple(sorted(key)): _q(v) for key, v in coords.items()}
        if all(v == 0 for v in self.coords.values()):
            raise ValueError("all Pluecker coordinates are zero")

    def __getitem__(self, subset) -> Fraction:
        return self.coords.get(tuple(sorted(subset)), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, PlueckerVector)
            and (self.k, self.n) == (other.k, other.n)
            and self.coords == other.coords
        )

    def __repr__(self):
        return f"PlueckerVector(k={self.k}, n={self.n})"


def pluecker(m: QMatrix, k: int | None = None, n: int | None = None) -> PlueckerVector:
    """Vector of maximal minors of m. Raises on rank-deficient input."""
    k = m.rows if k is None else k
    n = m.cols if n is None else n
    if (k, n) != (m.rows, m.cols):
        raise ValueError("matrix shape does not match (k, n)")
    coords = {}
    nonzero = False
    all_rows = range(k)
    for cols in combinations(range(n), k):
        d = m.submatrix(all_rows, cols).det()
        coords[cols] = d
        nonzero = nonzero or d != 0
    if not nonzero:
        raise ValueError("not a point of Gr(%d,%d)" % (k, n))
    return PlueckerVector(k, n, coords)


def sign_insert(subset: Iterable[int], i: int) -> int:
    """Sign (-1)^{#{s in subset : s > i}} of inserting i into a sorted subset."""
    s = set(subset)
    if i in s:
        raise ValueError("element %r already in subset" % (i,))
    return -1 if sum(1 for x in s if x > i) % 2 else 1


def set_complement_sign(subset: Sequence[int], n: int) -> int:
    """sign(I, [n]\\I): product of insertion signs of [n]\\I into I, smallest first."""
    cur = sorted(subset)
    sign = 1
    for j in range(n):
        if j not in cur:
            sign *= sign_insert(cur, j)
            cur.append(j)
            cur.sort()
    return sign


def cocircuit_matrix(q: PlueckerVector) -> QMatrix:
    """C(n,k-1) x n matrix with entries sign(I,j) * q_{I u j}, rows lex on I."""
    k, n = q.k, q.n
    out = []
    for sub in combinations(range(n), k - 1):
        s = set(sub)
        row = []
        for j in range(n):
            if j in s:
                row.append(Fraction(0))
            else:
                row.append(sign_insert(sub, j) * q[sub + (j,)])
        out.append(row)
    return QMatrix(out)
