"""Small dense matrices over arbitrary scalars.

The same class carries exact rational matrices (``Fraction`` entries), complex
float matrices, and matrices of dual numbers or batched numpy scalars: every
algorithm below uses only ring operations and explicit division, so it works
verbatim in all modes.  Sizes stay tiny (at most 7x7), so no clever numerics
are needed; exactness and genericity are what matter.
"""

from __future__ import annotations

from fractions import Fraction

from .ad import value_of
from .scalars import DomainError, InvariantError, magnitude


class Mat:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise DomainError("ragged matrix")

    # -- construction ----------------------------------------------------

    @staticmethod
    def identity(n, one=1, zero=0):
        return Mat([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n, m=None, zero=0):
        m = n if m is None else m
        return Mat([[zero] * m for _ in range(n)])

    @staticmethod
    def unit(n, i, j, value=1, zero=0):
        """E_{ij} (0-based) scaled by ``value``."""
        rows = [[zero] * n for _ in range(n)]
        rows[i][j] = value
        return Mat(rows)

    @staticmethod
    def diagonal(entries, zero=0):
        n = len(entries)
        rows = [[zero] * n for _ in range(n)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return Mat(rows)

    # -- basic protocol ---------------------------------------------------

    @property
    def n(self):
        return len(self.rows)

    @property
    def m(self):
        return len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return Mat(self.rows)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        return "Mat(" + repr(self.rows) + ")"

    def map(self, fn):
        return Mat([[fn(x) for x in row] for row in self.rows])

    def to_complex(self):
        return self.map(lambda x: complex(x))

    def entries(self):
        for row in self.rows:
            yield from row

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat([[-a for a in row] for row in self.rows])

    def scale(self, c):
        return Mat([[c * a for a in row] for row in self.rows])

    def __matmul__(self, other):
        if self.m != other.n:
            raise DomainError("dimension mismatch")
        bt = list(zip(*other.rows))
        return Mat([[_dot(row, col) for col in bt] for row in self.rows])

    def transpose(self):
        return Mat(list(zip(*self.rows)))

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.n):
            t = t + self.rows[i][i]
        return t

    def commutator(self, other):
        return self @ other - other @ self

    # -- elimination-based operations ---------------------------------------

    def inverse(self):
        """Gauss-Jordan inverse; exact over Fraction, partial-pivot over floats."""
        n = self.n
        a = [list(r) for r in self.rows]
        exact = _looks_exact(a)
        one = _one_like(a[0][0])
        b = [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
        for c in range(n):
            p = _pick_pivot(a, c, exact)
            if p is None:
                raise DomainError("singular matrix")
            a[c], a[p] = a[p], a[c]
            b[c], b[p] = b[p], b[c]
            inv = one / a[c][c]
            a[c] = [x * inv for x in a[c]]
            b[c] = [x * inv for x in b[c]]
            for r in range(n):
                if r != c:
                    f = a[r][c]
                    if exact and f == 0:
                        continue
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                    b[r] = [x - f * y for x, y in zip(b[r], b[c])]
        return Mat(b)

    def det(self):
        n = self.n
        a = [list(r) for r in self.rows]
        exact = _looks_exact(a)
        det = _one_like(a[0][0])
        for c in range(n):
            p = _pick_pivot(a, c, exact)
            if p is None:
                return det * 0
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det = det * a[c][c]
            inv = _one_like(a[c][c]) / a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] * inv
                if exact and f == 0:
                    continue
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def ldu(self):
        """Doolittle factorization M = L D U with L, U unit triangular, D diagonal.

        Requires nonvanishing leading principal minors; over floats a zero
        pivot surfaces as division blow-up and is the caller's signal that the
        point is outside the chart.
        """
        n = self.n
        a = [list(r) for r in self.rows]
        one = _one_like(a[0][0])
        lo = [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
        up = [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
        d = [one * 0] * n
        for c in range(n):
            piv = a[c][c]
            if _looks_exact(a) and piv == 0:
                raise DomainError("zero pivot in LDU (leading minor vanishes)")
            d[c] = piv
            inv = one / piv
            for j in range(c + 1, n):
                up[c][j] = a[c][j] * inv
            for r in range(c + 1, n):
                lo[r][c] = a[r][c] * inv
            for r in range(c + 1, n):
                f = a[r][c] * inv
                for j in range(c, n):
                    a[r][j] = a[r][j] - f * a[c][j]
        return Mat(lo), Mat.diagonal(d, zero=one * 0), Mat(up)

    def char_poly(self):
        """Monic characteristic polynomial coefficients [1, c_{n-1}, ..., c_0].

        Faddeev-LeVerrier; exact over Fraction, adequate over complex at these
        sizes.
        """
        n = self.n
        one = _one_like(self.rows[0][0])
        coeffs = [one]
        m = Mat.zero(n, zero=one * 0)
        c = one
        for k in range(1, n + 1):
            m = self @ (m + Mat.identity(n, one=one, zero=one * 0).scale(c))
            c = -m.trace() / k
            coeffs.append(c)
        return coeffs

    # -- structure predicates ------------------------------------------------

    def is_lower_triangular(self, tol=0.0):
        return self._zero_pattern(lambda i, j: j > i, tol)

    def is_upper_triangular(self, tol=0.0):
        return self._zero_pattern(lambda i, j: j < i, tol)

    def is_unit_lower_triangular(self, tol=0.0):
        if not self.is_lower_triangular(tol):
            return False
        return all(_near(self.rows[i][i], 1, tol) for i in range(self.n))

    def is_diagonal(self, tol=0.0):
        return self._zero_pattern(lambda i, j: i != j, tol)

    def _zero_pattern(self, off, tol):
        for i in range(self.n):
            for j in range(self.m):
                if off(i, j) and not _near(self.rows[i][j], 0, tol):
                    return False
        return True

    def max_abs(self):
        return max(magnitude(value_of(x)) for x in self.entries())

    def assert_invariant(self, condition, message):
        if not condition:
            raise InvariantError(message)


def _dot(row, col):
    acc = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        acc = acc + a * b
    return acc


def _one_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    return x * 0 + 1


def _looks_exact(rows):
    x = rows[0][0]
    return isinstance(x, (int, Fraction))


def _pick_pivot(a, c, exact):
    n = len(a)
    if exact:
        for r in range(c, n):
            if a[r][c] != 0:
                return r
        return None
    best, best_mag = None, 0.0
    for r in range(c, n):
        m = magnitude(value_of(a[r][c]))
        if m > best_mag:
            best, best_mag = r, m
    return best


def _near(x, target, tol):
    if tol == 0.0:
        return x == target
    return magnitude(value_of(x) - target) <= tol


def projectively_equal(a: Mat, b: Mat, tol=0.0) -> bool:
    """Equality of matrices up to a global nonzero scalar."""
    pivot = None
    for i in range(a.n):
        for j in range(a.m):
            if not _near(a.rows[i][j], 0, tol) or not _near(b.rows[i][j], 0, tol):
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        return True
    i, j = pivot
    if _near(a.rows[i][j], 0, tol) or _near(b.rows[i][j], 0, tol):
        return False
    ratio = b.rows[i][j] / a.rows[i][j]
    scaled = a.scale(ratio)
    diff = scaled - b
    if tol == 0.0:
        return all(x == 0 for x in diff.entries())
    scale = max(b.max_abs(), 1.0)
    return diff.max_abs() <= tol * scale
