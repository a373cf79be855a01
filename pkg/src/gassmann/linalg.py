"""Exact rational linear algebra.

Matrices are plain lists of rows; entries are ``int`` or ``fractions.Fraction``
and every result is exact.  Integral values are normalised to ``int`` so that
the common case (0/1 permutation matrices, integer kernels) stays on fast
Python integer arithmetic.

Elimination is fraction-free: each row is scaled to a primitive integer vector
and row operations are integer combinations, with the row content divided out
after every update.  Pivots are chosen positionally (first nonzero entry in
row-major order), never by magnitude.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Optional, Sequence

Matrix = list  # list[list[int | Fraction]]
Vector = list  # list[int | Fraction]

DEFAULT_FACTOR_BOUND = 10**6


class FactorBoundError(ArithmeticError):
    """Raised when trial division cannot certify a square class."""


def norm(x) -> int | Fraction:
    """Return ``x`` as an int when integral, otherwise as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- basic matrix helpers ---------------------------------------------------


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Matrix, cols: Optional[int] = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    """Product ``A @ B``; zero entries of ``A`` are skipped."""
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(ncols):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append([norm(x) for x in acc])
    return out


def matvec(A: Matrix, v: Sequence) -> Vector:
    return [norm(sum(a * x for a, x in zip(row, v) if a and x)) for row in A]


def block_diag(blocks: Sequence[Matrix], sizes: Sequence[int]) -> Matrix:
    n = sum(sizes)
    out = zeros(n, n)
    off = 0
    for B, k in zip(blocks, sizes):
        for i in range(k):
            out[off + i][off:off + k] = B[i]
        off += k
    return out


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to an integer vector with content 1.

    The first nonzero entry keeps its sign.  The zero vector is returned as
    integer zeros.
    """
    den = 1
    for x in v:
        if not isinstance(x, int):
            den = lcm(den, as_fraction(x).denominator)
    ints = [int(x * den) if isinstance(x, int) else int(as_fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


# -- fraction-free elimination ------------------------------------------------


def _integer_rows(M: Matrix) -> list[list[int]]:
    return [primitive(row) for row in M]


def _echelon(rows: list[list[int]], ncols: int, reduced: bool) -> tuple[list[list[int]], list[int]]:
    """Row echelon form over Z with content reduction.

    Returns the nonzero rows (in pivot order) and their pivot columns.  With
    ``reduced`` the entries above every pivot are cleared as well.
    """
    rows = [r[:] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        targets = range(len(rows)) if reduced else range(r + 1, len(rows))
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = [ma * x - mb * y for x, y in zip(row, prow)]
            cont = 0
            for x in new:
                if x:
                    cont = gcd(cont, x)
                    if cont == 1:
                        break
            if cont > 1:
                new = [x // cont for x in new]
            rows[i] = new
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(M: Matrix, ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with unit pivots (entries int or Fraction)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    rows, pivots = _echelon(_integer_rows(M), ncols, reduced=True)
    out = []
    for row, c in zip(rows, pivots):
        p = row[c]
        out.append([norm(Fraction(x, p)) if x else 0 for x in row])
    return out, pivots


def rank(M: Matrix, ncols: Optional[int] = None) -> int:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    rows, _ = _echelon(_integer_rows(M), ncols, reduced=False)
    return len(rows)


def _kernel_from_rref(R: Matrix, pivots: list[int], ncols: int) -> list[list[int]]:
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v: list = [0] * ncols
        v[f] = 1
        for row, c in zip(R, pivots):
            if row[f]:
                v[c] = -row[f]
        v = primitive(v)
        if next(x for x in v if x) < 0:
            v = [-x for x in v]
        basis.append(v)
    return basis


def kernel(M: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Basis of ``{x : M x = 0}``: one primitive integer vector per free column,
    first nonzero entry positive."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(M, ncols)
    return _kernel_from_rref(R, pivots, ncols)


def rank_kernel_image(M: Matrix, ncols: Optional[int] = None) -> tuple[int, list[list[int]], list[list[int]]]:
    """``(rank, kernel basis, column-space basis)`` of ``M``.

    The kernel vectors are primitive integer vectors; the image basis consists
    of the pivot columns of ``M`` scaled to primitive integer vectors.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(M, ncols)
    ker = _kernel_from_rref(R, pivots, ncols)
    image = [primitive([row[c] for row in M]) for c in pivots]
    return len(pivots), ker, image


def row_space(vectors: Sequence[Sequence], ncols: int) -> Matrix:
    """Canonical (RREF) basis of the span of ``vectors``."""
    R, _ = rref([list(v) for v in vectors], ncols)
    return R


def same_span(U: Sequence[Sequence], V: Sequence[Sequence], ncols: int) -> bool:
    return row_space(U, ncols) == row_space(V, ncols)


def coordinates(basis_rref: Matrix, pivots: list[int], v: Sequence) -> Optional[Vector]:
    """Coordinates of ``v`` in an RREF basis, or None when ``v`` is outside the span."""
    coords = [v[c] for c in pivots]
    recon = [0] * len(v)
    for a, row in zip(coords, basis_rref):
        if a:
            for j, x in enumerate(row):
                if x:
                    recon[j] += a * x
    if any(norm(x) != norm(y) for x, y in zip(recon, v)):
        return None
    return [norm(a) for a in coords]


# -- determinants ---------------------------------------------------------------


def det(M: Matrix) -> int | Fraction:
    """Exact determinant by Bareiss elimination.

    Row denominators are cleared first and the scale factor divided back out
    at the end.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("det requires a square matrix")
    if n == 0:
        return 1
    scale = Fraction(1)
    A = []
    for row in M:
        den = 1
        for x in row:
            if not isinstance(x, int):
                den = lcm(den, as_fraction(x).denominator)
        scale *= den
        A.append([int(x * den) for x in map(as_fraction, row)])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi, rowk = A[i], A[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return norm(Fraction(sign * A[n - 1][n - 1]) / scale)


def det_mod(M: Sequence[Sequence[int]], q: int) -> int:
    """Determinant of an integer matrix reduced mod the prime ``q``."""
    n = len(M)
    A = [[x % q for x in row] for row in M]
    result = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            result = -result
        akk = A[k][k]
        result = result * akk % q
        inv = pow(akk, -1, q)
        for i in range(k + 1, n):
            f = A[i][k] * inv % q
            if f:
                rowi, rowk = A[i], A[k]
                for j in range(k, n):
                    rowi[j] = (rowi[j] - f * rowk[j]) % q
    return result % q


# -- solving ------------------------------------------------------------------------


def solve(A: Matrix, b: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x: list = [0] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    return x


def inverse(M: Matrix) -> Optional[Matrix]:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in R]


# -- square classes -----------------------------------------------------------------


def _squarefree_int(n: int, bound: int) -> int:
    """Squarefree part of a positive integer by trial division up to ``bound``."""
    out = 1
    p = 2
    while n > 1 and p <= bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1 if p == 2 else 2
    if n > 1:
        # every prime factor of the cofactor exceeds min(bound, sqrt(n))
        if p * p > n:
            out *= n
        else:
            raise FactorBoundError(
                f"cofactor {n} has no prime factor <= {bound}; square class undetermined"
            )
    return out


def squarefree_part(r, factor_bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """The signed squarefree integer ``d`` with ``r / d`` a rational square."""
    r = as_fraction(r)
    if r == 0:
        raise ValueError("zero has no square class")
    sign = -1 if r < 0 else 1
    return sign * _squarefree_int(abs(r.numerator) * r.denominator, factor_bound)


def is_rational(x) -> bool:
    return isinstance(x, Rational)
