"""Exact rational scalars and dense rational linear algebra.

Every quantity in this package that can be rational is kept rational: the
scalar type is ``fractions.Fraction`` (aliased ``Rational``), matrices are
dense row-major tuples of Fractions, and all eliminations are exact.
Matrices are small (desk-scale ranks, at most ~12), so dense algorithms are
the right tool.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotPositiveDefinite, NotSymmetric

Rational = Fraction


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading '-') into an exact Fraction."""
    text = s.strip().replace("−", "-")
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {s!r}") from exc


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def int_sqrt_floor(q: Fraction | int) -> int:
    """Largest nonnegative integer t with t*t <= q.

    Exact for any nonnegative rational: t^2 is an integer, so t^2 <= q
    iff t^2 <= floor(q).
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    return math.isqrt(q.numerator // q.denominator)


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(Fraction(e) for e in entries)
        if rows < 0 or cols < 0 or len(ent) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(nr, nc, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)))
        return RatMatrix(self.rows, other.cols, out)

    def scaled(self, factor) -> "RatMatrix":
        f = Fraction(factor)
        return RatMatrix(self.rows, self.cols, [f * e for e in self.entries])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: {body})"


def block_diag(*mats: RatMatrix) -> RatMatrix:
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = [[Fraction(0)] * c for _ in range(n)]
    ro = co = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[ro + i][co + j] = m[i, j]
        ro += m.rows
        co += m.cols
    return RatMatrix.from_rows(out)


def rat_det(a: RatMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant needs a square matrix")
    n = a.rows
    if n == 0:
        return Fraction(1)
    m = a.to_rows()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update: every division here is exact.
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rat_rank(a: RatMatrix) -> int:
    """Rank over the rationals via exact Gaussian elimination."""
    m = a.to_rows()
    nr, nc = a.rows, a.cols
    rank = 0
    for col in range(nc):
        pivot = next((r for r in range(rank, nr) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        for r in range(rank + 1, nr):
            if m[r][col] != 0:
                f = m[r][col] / prow[col]
                for c in range(col, nc):
                    m[r][c] -= f * prow[c]
        rank += 1
        if rank == nr:
            break
    return rank


def rat_solve(a: RatMatrix, b: Sequence) -> list[Fraction] | None:
    """Solve A x = b exactly for nonsingular square A; None when A is singular."""
    if a.rows != a.cols:
        raise ValueError("rat_solve needs a square matrix")
    n = a.rows
    bb = [Fraction(x) for x in b]
    if len(bb) != n:
        raise ValueError("right-hand side length mismatch")
    m = a.to_rows()
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        bb[col], bb[pivot] = bb[pivot], bb[col]
        f = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                g = m[r][col] / f
                for c in range(col, n):
                    m[r][c] -= g * m[col][c]
                bb[r] -= g * bb[col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = bb[r] - sum(m[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / m[r][r]
    return x


def rat_inv(a: RatMatrix) -> RatMatrix:
    """Exact inverse of a nonsingular square matrix."""
    if a.rows != a.cols:
        raise ValueError("inverse needs a square matrix")
    n = a.rows
    m = [list(a.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        f = m[col][col]
        m[col] = [x / f for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                g = m[r][col]
                m[r] = [x - g * y for x, y in zip(m[r], m[col])]
    return RatMatrix.from_rows([row[n:] for row in m])


def solve_affine(a_rows: Sequence[Sequence], b: Sequence):
    """General exact solver for A x = b with any shape.

    Returns (particular, nullspace_basis) or None when inconsistent.
    The nullspace basis vectors are indexed by the free columns in order.
    """
    nr = len(a_rows)
    nc = len(a_rows[0]) if nr else 0
    m = [[Fraction(e) for e in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    piv_cols: list[int] = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        f = m[r][c]
        m[r] = [x / f for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    if any(m[i][nc] != 0 for i in range(r, nr)):
        return None
    particular = [Fraction(0)] * nc
    for i, c in enumerate(piv_cols):
        particular[c] = m[i][nc]
    free_cols = [c for c in range(nc) if c not in piv_cols]
    null_basis = []
    for fc in free_cols:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for i, c in enumerate(piv_cols):
            v[c] = -m[i][fc]
        null_basis.append(v)
    return particular, null_basis


class LDLFactorization:
    """Exact G = L D L^T with L unit lower triangular and rational pivots D."""

    __slots__ = ("unit_lower", "diag")

    def __init__(self, unit_lower: RatMatrix, diag: tuple[Fraction, ...]):
        object.__setattr__(self, "unit_lower", unit_lower)
        object.__setattr__(self, "diag", tuple(Fraction(d) for d in diag))

    def __setattr__(self, name, value):
        raise AttributeError("LDLFactorization is immutable")

    def reconstruct(self) -> RatMatrix:
        n = len(self.diag)
        low = self.unit_lower
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[i][j] = sum(low[i, k] * self.diag[k] * low[j, k] for k in range(n))
        return RatMatrix.from_rows(out)


def ldl_decompose(g: RatMatrix) -> LDLFactorization:
    """Exact LDL^T factorization of a symmetric positive-definite matrix.

    Raises NotSymmetric / NotPositiveDefinite (the latter as soon as a pivot
    fails to be positive).
    """
    if not g.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    n = g.rows
    low = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    diag: list[Fraction] = []
    for j in range(n):
        d = g[j, j] - sum(low[j][k] * low[j][k] * diag[k] for k in range(j))
        if d <= 0:
            raise NotPositiveDefinite(f"pivot {j} is {d}")
        diag.append(d)
        for i in range(j + 1, n):
            s = g[i, j] - sum(low[i][k] * low[j][k] * diag[k] for k in range(j))
            low[i][j] = s / d
    return LDLFactorization(RatMatrix.from_rows(low), tuple(diag))


def is_positive_definite(g: RatMatrix) -> bool:
    try:
        ldl_decompose(g)
        return True
    except (NotSymmetric, NotPositiveDefinite):
        return False


def rational_sqrt_exact(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative input")
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None
