"""Read-once oblivious branching programs and their structured variants.

An Abp is the sandwich u^T * M_1 * M_2 * ... * M_k * v where every
layer M is a matrix polynomial.  For the read-once kinds ("general",
"commutative", "diagonal") each layer reads a single variable,

    M(x) = A_0 + A_1 x + A_2 x^2 + ... ,

with one layer per variable; for "set_multilinear" each layer reads one
part of a declared variable partition and is linear with no constant
term,

    M = A_{j,1} x_{j,1} + A_{j,2} x_{j,2} + ... .

Layers are stored in a fixed declaration order; `order` is the
permutation giving the actual multiplication order.  Only stored
matrices exist; absent powers are zero semantically.

This module also computes coefficient ("Nisan") matrices of a
polynomial over a variable bipartition, whose prefix-cut ranks give the
exact minimal ROABP width and size per variable order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DEFAULT_ENTRY_CAP, DEFAULT_TERM_CAP, CapExceeded
from .linalg import PolyMatrix, QMatrix, commute, dot, rank, vec_mat
from .poly import Mono, Poly, deglex_key

KINDS = ("general", "commutative", "diagonal", "set_multilinear")
ROABP_KINDS = ("general", "commutative", "diagonal")


@dataclass(frozen=True)
class Layer:
    """One matrix-polynomial factor: a sum of matrix * x_var^power terms.

    Read-once layers carry one variable with powers 0..d; set-multilinear
    layers carry several variables, each at power 1.
    """

    terms: tuple[tuple[int, int, QMatrix], ...]  # (var index, power, matrix)

    def __init__(self, terms: Iterable[tuple[int, int, QMatrix]]):
        object.__setattr__(self, "terms", tuple(sorted(terms, key=lambda t: (t[0], t[1]))))

    def variables(self) -> set[int]:
        """Variables this layer is attached to (power-0 terms count)."""
        return {var for var, _, _ in self.terms}

    def value_at(self, point: Sequence[Fraction], width: int) -> QMatrix:
        out = [[Fraction(0)] * width for _ in range(width)]
        for var, power, mat in self.terms:
            scale = point[var] ** power
            if scale == 0:
                continue
            for i, row in enumerate(mat.data):
                for j, x in enumerate(row):
                    if x:
                        out[i][j] += x * scale
        return QMatrix(out)

    def symbolic(self, vars: tuple[str, ...], width: int) -> PolyMatrix:
        entries: list[list[dict[Mono, Fraction]]] = [
            [dict() for _ in range(width)] for _ in range(width)
        ]
        for var, power, mat in self.terms:
            mono = tuple(power if k == var else 0 for k in range(len(vars)))
            for i, row in enumerate(mat.data):
                for j, x in enumerate(row):
                    if x:
                        cell = entries[i][j]
                        cell[mono] = cell.get(mono, Fraction(0)) + x
        return PolyMatrix(vars, [[Poly(vars, cell) for cell in row] for row in entries])


@dataclass(frozen=True)
class Abp:
    """A branching program with declared kind, boundary vectors and layer order."""

    kind: str
    vars: tuple[str, ...]
    width: int
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    layers: tuple[Layer, ...]
    order: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if len(self.u) != self.width or len(self.v) != self.width:
            raise ValueError("boundary vector length differs from width")
        if sorted(self.order) != list(range(len(self.layers))):
            raise ValueError("order is not a permutation of the layers")
        seen: set[int] = set()
        for layer in self.layers:
            for var, power, mat in layer.terms:
                if not (0 <= var < len(self.vars)):
                    raise ValueError(f"variable index {var} out of range")
                if power < 0:
                    raise ValueError("negative power")
                if mat.rows != self.width or mat.cols != self.width:
                    raise ValueError("coefficient matrix does not match width")
            read = layer.variables()
            if self.kind in ROABP_KINDS and len(read) > 1:
                raise ValueError("read-once layer reads more than one variable")
            if self.kind == "set_multilinear":
                if any(power != 1 for _, power, _ in layer.terms):
                    raise ValueError("set-multilinear layers must be linear with no constant term")
            if read & seen:
                raise ValueError("variable read by more than one layer")
            seen |= read

    def partition(self) -> list[list[int]]:
        """Variable groups read by each layer, in declaration order."""
        return [sorted(layer.variables()) for layer in self.layers]

    def coefficient_matrices(self) -> list[QMatrix]:
        return [mat for layer in self.layers for _, _, mat in layer.terms]


def eval_abp(abp: Abp, point: Sequence[Fraction | int]) -> Fraction:
    """Exact value u^T * (product of specialized layers in order) * v.

    Runs as vector-times-matrix sweeps, w^2 work per layer.
    """
    point = [Fraction(p) for p in point]
    if len(point) != len(abp.vars):
        raise ValueError(f"point has {len(point)} coordinates, expected {len(abp.vars)}")
    row = list(abp.u)
    for idx in abp.order:
        row = vec_mat(row, abp.layers[idx].value_at(point, abp.width))
    return dot(row, abp.v)


def expand_abp(abp: Abp, max_terms: int = DEFAULT_TERM_CAP) -> Poly:
    """The exact polynomial computed by the program, via symbolic products."""
    row: list[Poly] = [Poly.constant(abp.vars, c) for c in abp.u]
    for idx in abp.order:
        sym = abp.layers[idx].symbolic(abp.vars, abp.width)
        new_row: list[Poly] = []
        for j in range(abp.width):
            acc = Poly.zero(abp.vars)
            for k in range(abp.width):
                if row[k] and sym.data[k][j]:
                    acc = acc + row[k] * sym.data[k][j]
            new_row.append(acc)
        row = new_row
        total = sum(len(p.terms) for p in row)
        if total > max_terms:
            raise CapExceeded(
                f"symbolic expansion reached {total} intermediate terms, cap is {max_terms}",
                flag="--max-terms",
            )
    out = Poly.zero(abp.vars)
    for p, c in zip(row, abp.v):
        if c and p:
            out = out + p.scale(c)
    return out


def permute_order(abp: Abp, new_order: Sequence[int]) -> Abp:
    """Same layers and boundary, new multiplication order."""
    new_order = tuple(new_order)
    if sorted(new_order) != list(range(len(abp.layers))):
        raise ValueError("not a valid permutation of the layers")
    return replace(abp, order=new_order)


def check_kind(abp: Abp) -> bool:
    """Verify the structural invariant of the declared kind, exactly.

    commutative / set_multilinear: all coefficient matrices commute
    pairwise; diagonal: all matrices diagonal; general: always true.
    """
    if abp.kind == "general":
        return True
    mats = abp.coefficient_matrices()
    if abp.kind == "diagonal":
        return all(m.is_diagonal() for m in mats)
    for a, b in itertools.combinations(mats, 2):
        if not commute(a, b):
            return False
    return True


# ---------------------------------------------------------------------------
# Nisan matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NisanCutReport:
    """Prefix-cut ranks for one variable order; width = max, size = sum."""

    order: tuple[int, ...]
    cut_ranks: tuple[int, ...]

    @property
    def width(self) -> int:
        return max(self.cut_ranks)

    @property
    def size(self) -> int:
        return sum(self.cut_ranks)


def _exponent_tuples(count: int, degree_bound: int) -> list[tuple[int, ...]]:
    tuples = list(itertools.product(range(degree_bound + 1), repeat=count))
    tuples.sort(key=deglex_key)
    return tuples


def nisan_matrix(f: Poly, s: Iterable[int],
                 max_entries: int = DEFAULT_ENTRY_CAP) -> QMatrix:
    """Coefficient matrix of f over the bipartition (s, complement).

    Rows and columns are indexed by all monomials of individual degree
    at most d over the two variable groups (d being the largest
    individual degree of f), in deg-lex order of the exponent tuples;
    the (m, m') entry is the coefficient of m * m' in f.
    """
    s_sorted = sorted(set(s))
    if any(i < 0 or i >= f.arity for i in s_sorted):
        raise ValueError("variable index out of range")
    t_sorted = [i for i in range(f.arity) if i not in set(s_sorted)]
    d = f.max_individual_degree()
    n_rows = (d + 1) ** len(s_sorted)
    n_cols = (d + 1) ** len(t_sorted)
    if n_rows * n_cols > max_entries:
        raise CapExceeded(
            f"Nisan matrix of {n_rows}x{n_cols} entries exceeds the cap of {max_entries}",
            flag="--max-entries",
        )
    row_index = {e: i for i, e in enumerate(_exponent_tuples(len(s_sorted), d))}
    col_index = {e: j for j, e in enumerate(_exponent_tuples(len(t_sorted), d))}
    data = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    for mono, coeff in f.terms.items():
        re = tuple(mono[i] for i in s_sorted)
        ce = tuple(mono[i] for i in t_sorted)
        data[row_index[re]][col_index[ce]] = coeff
    return QMatrix(data)


def _cut_rank_sparse(f: Poly, s_sorted: list[int], t_sorted: list[int]) -> int:
    """Rank of the bipartition matrix gathered sparsely from f's support.

    Zero rows and columns never contribute to rank, so only row/column
    keys that actually occur in the support need materializing.
    """
    rows: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
    for mono, coeff in f.terms.items():
        re = tuple(mono[i] for i in s_sorted)
        ce = tuple(mono[i] for i in t_sorted)
        rows.setdefault(re, {})[ce] = coeff
    col_keys = sorted({c for row in rows.values() for c in row}, key=deglex_key)
    col_index = {c: j for j, c in enumerate(col_keys)}
    dense = []
    for key in sorted(rows, key=deglex_key):
        row = [Fraction(0)] * len(col_keys)
        for ce, coeff in rows[key].items():
            row[col_index[ce]] = coeff
        dense.append(row)
    if not dense:
        return 0
    return rank(QMatrix(dense), max_entries=max(1, len(dense) * len(col_keys)))


def nisan_width(f: Poly, order: Sequence[int],
                max_entries: int = DEFAULT_ENTRY_CAP) -> NisanCutReport:
    """Exact minimal ROABP width/size of f in the given variable order.

    Computes the rank of every prefix-cut coefficient matrix; cuts whose
    dense form would exceed the entry cap fall back to the sparse
    gather, which yields the same rank.
    """
    order = tuple(order)
    if sorted(order) != list(range(f.arity)):
        raise ValueError("order is not a permutation of the variables")
    d = f.max_individual_degree()
    ranks = []
    for i in range(1, f.arity + 1):
        s_sorted = sorted(order[:i])
        t_sorted = sorted(order[i:])
        dense_entries = (d + 1) ** len(s_sorted) * (d + 1) ** len(t_sorted)
        if dense_entries <= max_entries:
            ranks.append(rank(nisan_matrix(f, s_sorted, max_entries=max_entries)))
        else:
            ranks.append(_cut_rank_sparse(f, s_sorted, t_sorted))
    return NisanCutReport(order=order, cut_ranks=tuple(ranks))
