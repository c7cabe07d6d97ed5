"""Determinant and permanent generators plus the anti-diagonal fast path.

The derivative span of the n x n symbolic determinant is spanned by the
determinants of its square minors, its apolar ideal is generated by the
permanents of 2 x 2 minors together with the quadratic monomials
dividing no determinant term, and under deg-lex (row-major variable
chain) the normal set consists of the anti-diagonal monomials of all
minors.  That yields closed-form multiplication tables: multiplying the
anti-diagonal of the (S, T) minor by x_{i,j} lands, up to sign, on the
anti-diagonal of the (S + i, T + j) minor.

The closed forms here are an optimization; the generic quotient
pipeline is the source of truth and the test suite forces entrywise
agreement before the fast path is trusted.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import CapExceeded
from .linalg import PolyMatrix, QMatrix
from .poly import Mono, Poly, deglex_key

# dense C(2n, n)-dimensional tables get impractical quickly; the fast
# path refuses past this point (width 70 at n = 4)
FAST_PATH_MAX_N = 4


def det_variables(n: int) -> tuple[str, ...]:
    """Row-major variable names x1_1, x1_2, ..., xn_n."""
    return tuple(f"x{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1))


def _var_index(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def det_polynomial(n: int) -> Poly:
    """The n^2-variable determinant via signed permutation expansion."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vars = det_variables(n)
    terms = {}
    for perm in itertools.permutations(range(1, n + 1)):
        mono = [0] * (n * n)
        for i, j in enumerate(perm, start=1):
            mono[_var_index(n, i, j)] = 1
        terms[tuple(mono)] = Fraction(_perm_sign(perm))
    return Poly(vars, terms)


def perm_polynomial(n: int) -> Poly:
    """The n^2-variable permanent: the determinant expansion without signs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vars = det_variables(n)
    terms = {}
    for perm in itertools.permutations(range(1, n + 1)):
        mono = [0] * (n * n)
        for i, j in enumerate(perm, start=1):
            mono[_var_index(n, i, j)] = 1
        terms[tuple(mono)] = Fraction(1)
    return Poly(vars, terms)


def palindrome(n: int) -> Poly:
    """(x1 + y1)(x2 + y2)...(xn + yn), expanded over vars x1..xn, y1..yn."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vars = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))
    out = Poly.constant(vars, 1)
    for i in range(n):
        factor = Poly.variable(vars, i) + Poly.variable(vars, n + i)
        out = out * factor
    return out


# ---------------------------------------------------------------------------
# anti-diagonal normal set and sign-formula tables
# ---------------------------------------------------------------------------

def _anti_diagonal_pairs(s: tuple[int, ...], t: tuple[int, ...]) -> list[tuple[int, int]]:
    """Row/column pairs of the anti-diagonal of the (s, t) minor."""
    k = len(s)
    return [(s[a], t[k - 1 - a]) for a in range(k)]


def _pairs_to_mono(n: int, pairs: list[tuple[int, int]]) -> Mono:
    mono = [0] * (n * n)
    for i, j in pairs:
        mono[_var_index(n, i, j)] += 1
    return tuple(mono)


def _pairs_sign(pairs: list[tuple[int, int]]) -> int:
    """Sign of the permutation a monomial of pairwise-distinct rows/cols encodes.

    Rows and columns are relabeled by rank, giving a permutation of
    {1..k} whose parity this returns.
    """
    rows = sorted(i for i, _ in pairs)
    cols = sorted(j for _, j in pairs)
    row_rank = {r: a for a, r in enumerate(rows)}
    col_rank = {c: a for a, c in enumerate(cols)}
    perm = [0] * len(pairs)
    for i, j in pairs:
        perm[row_rank[i]] = col_rank[j]
    return _perm_sign(tuple(perm))


def det_normal_set(n: int) -> list[Mono]:
    """Anti-diagonal monomials of all square minors, ascending deg-lex.

    C(2n, n) monomials in total, the constant monomial included (the
    empty minor).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    out = []
    for k in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), k):
            for t in itertools.combinations(range(1, n + 1), k):
                out.append(_pairs_to_mono(n, _anti_diagonal_pairs(s, t)))
    out.sort(key=deglex_key)
    return out


def det_mult_tables(n: int, max_n: int = FAST_PATH_MAX_N) -> list[QMatrix]:
    """Closed-form multiplication tables of the determinant's apolar ideal.

    One C(2n,n)-dimensional table per variable x_{i,j}, in row-major
    variable order.  Row (S, T) is zero when i is in S or j is in T;
    otherwise it carries a single signed 1 at the anti-diagonal monomial
    of the (S + i, T + j) minor.  Must agree entrywise with the generic
    quotient pipeline applied to det_polynomial(n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > max_n:
        raise CapExceeded(
            f"fast-path tables are limited to n <= {max_n} "
            f"(dimension C(2n,n) grows too fast); use the generic quotient "
            f"pipeline on det_polynomial({n}) instead",
            flag="--max-entries",
        )
    normal = det_normal_set(n)
    position = {mono: idx for idx, mono in enumerate(normal)}
    width = len(normal)

    index_sets: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for k in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), k):
            for t in itertools.combinations(range(1, n + 1), k):
                index_sets.append((s, t))

    tables = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            data = [[Fraction(0)] * width for _ in range(width)]
            for s, t in index_sets:
                if i in s or j in t:
                    continue
                base = _anti_diagonal_pairs(s, t)
                row = position[_pairs_to_mono(n, base)]
                s2 = tuple(sorted(s + (i,)))
                t2 = tuple(sorted(t + (j,)))
                target_pairs = _anti_diagonal_pairs(s2, t2)
                col = position[_pairs_to_mono(n, target_pairs)]
                sign = _pairs_sign(target_pairs) * _pairs_sign(base + [(i, j)])
                data[row][col] = Fraction(sign)
            tables.append(QMatrix(data))
    return tables


def det2_golden() -> list[PolyMatrix]:
    """The four 6x6 layer matrices of the width-6 program for the 2x2 determinant.

    Rows and columns follow the normal set (1, x1_1, x1_2, x2_1, x2_2,
    x1_2*x2_1); matrix k is I + A_k * x_k for the multiplication table
    A_k of variable x_k, written out explicitly as golden data.
    """
    vars = det_variables(2)
    # (variable, off-diagonal entries as (row, col, coefficient), 1-indexed)
    data = [
        ("x1_1", [(1, 2, 1), (5, 6, -1)]),
        ("x1_2", [(1, 3, 1), (4, 6, 1)]),
        ("x2_1", [(1, 4, 1), (3, 6, 1)]),
        ("x2_2", [(1, 5, 1), (2, 6, -1)]),
    ]
    matrices = []
    for name, entries in data:
        var = vars.index(name)
        rows = [[Poly.constant(vars, 1) if i == j else Poly.zero(vars) for j in range(6)]
                for i in range(6)]
        for r, c, coeff in entries:
            rows[r - 1][c - 1] = Poly.variable(vars, var).scale(coeff)
        matrices.append(PolyMatrix(vars, rows))
    return matrices
