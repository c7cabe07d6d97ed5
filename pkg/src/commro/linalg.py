"""Exact dense linear algebra over the rationals.

QMatrix is a dense row-major matrix of Fraction entries; PolyMatrix is
the same shape with Poly entries (used to expand branching programs
symbolically).  Elimination uses exact arithmetic with largest-absolute-
value pivoting to moderate coefficient growth; correctness does not
depend on the pivot choice.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DEFAULT_ENTRY_CAP, CapExceeded
from .poly import Poly


class QMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[Fraction | int]]):
        self.data: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(x) for x in row) for row in data
        )
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[Fraction | int]) -> QMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        return self.data[index[0]][index[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.data == other.data

    __hash__ = None

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def is_diagonal(self) -> bool:
        return all(
            x == 0
            for i, row in enumerate(self.data)
            for j, x in enumerate(row)
            if i != j
        )

    def transpose(self) -> QMatrix:
        return QMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def scale(self, factor: Fraction | int) -> QMatrix:
        factor = Fraction(factor)
        return QMatrix([[x * factor for x in row] for row in self.data])

    def __add__(self, other: QMatrix) -> QMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return QMatrix([
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ])

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} vs {other.rows}")
        out = [[Fraction(0)] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if a == 0:
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        return QMatrix(out)

    def power(self, n: int) -> QMatrix:
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        out = QMatrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out


def vec_mat(vec: Sequence[Fraction], m: QMatrix) -> list[Fraction]:
    """Row vector times matrix; skips zero entries of the vector."""
    if len(vec) != m.rows:
        raise ValueError("dimension mismatch")
    out = [Fraction(0)] * m.cols
    for k, a in enumerate(vec):
        if a == 0:
            continue
        row = m.data[k]
        for j, b in enumerate(row):
            if b:
                out[j] += a * b
    return out


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def _check_entry_cap(rows: int, cols: int, max_entries: int) -> None:
    if rows * cols > max_entries:
        raise CapExceeded(
            f"matrix of {rows}x{cols} = {rows * cols} entries exceeds the cap of {max_entries}",
            flag="--max-entries",
        )


def rank(m: QMatrix, max_entries: int = DEFAULT_ENTRY_CAP) -> int:
    """Exact rank via Gaussian elimination with largest-|pivot| selection."""
    _check_entry_cap(m.rows, m.cols, max_entries)
    a = [list(row) for row in m.data]
    r = 0
    for c in range(m.cols):
        pivot, best = None, Fraction(0)
        for i in range(r, m.rows):
            if abs(a[i][c]) > best:
                pivot, best = i, abs(a[i][c])
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        prow = a[r]
        pval = prow[c]
        for i in range(r + 1, m.rows):
            f = a[i][c]
            if f == 0:
                continue
            f /= pval
            arow = a[i]
            for j in range(c, m.cols):
                if prow[j]:
                    arow[j] -= f * prow[j]
        r += 1
        if r == m.rows:
            break
    return r


def solve(m: QMatrix, b: Sequence[Fraction | int],
          max_entries: int = DEFAULT_ENTRY_CAP) -> list[Fraction] | None:
    """Some exact solution x of m @ x = b, or None if the system is inconsistent."""
    _check_entry_cap(m.rows, m.cols + 1, max_entries)
    b = [Fraction(x) for x in b]
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    a = [list(row) + [b[i]] for i, row in enumerate(m.data)]
    n, cols = m.rows, m.cols
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(cols):
        pivot, best = None, Fraction(0)
        for i in range(r, n):
            if abs(a[i][c]) > best:
                pivot, best = i, abs(a[i][c])
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        prow = a[r]
        pval = prow[c]
        for i in range(n):
            if i == r or a[i][c] == 0:
                continue
            f = a[i][c] / pval
            arow = a[i]
            for j in range(c, cols + 1):
                if prow[j]:
                    arow[j] -= f * prow[j]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for row, col in pivots:
        x[col] = a[row][cols] / a[row][col]
    return x


def inverse(m: QMatrix) -> QMatrix | None:
    """Exact inverse, or None when m is singular (m must be square)."""
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(m.data)]
    for c in range(n):
        pivot, best = None, Fraction(0)
        for i in range(c, n):
            if abs(a[i][c]) > best:
                pivot, best = i, abs(a[i][c])
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        prow = a[c]
        pval = prow[c]
        for j in range(2 * n):
            prow[j] /= pval
        for i in range(n):
            if i == c or a[i][c] == 0:
                continue
            f = a[i][c]
            arow = a[i]
            for j in range(c, 2 * n):
                if prow[j]:
                    arow[j] -= f * prow[j]
    return QMatrix([row[n:] for row in a])


def commute(a: QMatrix, b: QMatrix) -> bool:
    """True iff a @ b == b @ a exactly (both square, equal dimension)."""
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise ValueError("dimension mismatch")
    return a @ b == b @ a


def minimal_polynomial(m: QMatrix) -> Poly:
    """Monic least-degree univariate p (in the variable t) with p(m) = 0.

    Found as the first linear dependence among I, m, m^2, ... in the
    flattened w^2-dimensional coordinate space.
    """
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    # rows: pivot index -> (reduced flattened vector, combination over powers)
    reduced: dict[int, tuple[list[Fraction], list[Fraction]]] = {}
    power = QMatrix.identity(n)
    k = 0
    while True:
        vec = [x for row in power.data for x in row]
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for piv in sorted(reduced):
            if vec[piv] == 0:
                continue
            rvec, rcomb = reduced[piv]
            f = vec[piv] / rvec[piv]
            for j in range(piv, n * n):
                if rvec[j]:
                    vec[j] -= f * rvec[j]
            for j, c in enumerate(rcomb):
                comb[j] -= f * c
        piv = next((j for j in range(n * n) if vec[j] != 0), None)
        if piv is None:
            return Poly(("t",), {(j,): c for j, c in enumerate(comb)})
        reduced[piv] = (vec, comb)
        power = power @ m
        k += 1


class PolyMatrix:
    """Immutable dense matrix with Poly entries sharing one variable ring."""

    __slots__ = ("rows", "cols", "vars", "data")

    def __init__(self, vars: Iterable[str], data: Iterable[Iterable[Poly]]):
        self.vars = tuple(vars)
        self.data: tuple[tuple[Poly, ...], ...] = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
            for p in row:
                if p.vars != self.vars:
                    raise ValueError("entry over a different variable ring")

    @classmethod
    def identity(cls, vars: Iterable[str], n: int) -> PolyMatrix:
        vars = tuple(vars)
        one, zero = Poly.constant(vars, 1), Poly.zero(vars)
        return cls(vars, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_qmatrix(cls, vars: Iterable[str], m: QMatrix) -> PolyMatrix:
        vars = tuple(vars)
        return cls(vars, [[Poly.constant(vars, x) for x in row] for row in m.data])

    def __getitem__(self, index: tuple[int, int]) -> Poly:
        return self.data[index[0]][index[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.vars == other.vars and self.data == other.data

    __hash__ = None

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols} over {self.vars})"

    def specialize(self, point: Sequence[Fraction | int]) -> QMatrix:
        return QMatrix([[p.eval(point) for p in row] for row in self.data])


def polymat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Exact symbolic matrix product."""
    if a.vars != b.vars:
        raise ValueError("variable ring mismatch")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.cols} vs {b.rows}")
    zero = Poly.zero(a.vars)
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                p = a.data[i][k]
                q = b.data[k][j]
                if p and q:
                    acc = acc + p * q
            row.append(acc)
        out.append(row)
    return PolyMatrix(a.vars, out)
