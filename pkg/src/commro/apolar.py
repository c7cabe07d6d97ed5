"""Quotient structure of the apolar ideal, via exact linear algebra.

The apolar ideal of f collects every polynomial h whose derivative
operator annihilates f.  For nonzero f its quotient ring is finite
dimensional with dimension equal to the derivative-span dimension of f,
and a polynomial lies in the ideal exactly when its pairing against a
derivative basis of f vanishes.  That makes the whole quotient
computable with rank/solve alone, no general Groebner machinery:

* the normal set is found greedily over monomials in ascending deg-lex,
  keeping a monomial iff its pairing vector against the basis grows the
  rank (a monomial is a leading monomial of the ideal exactly when its
  vector depends on those of smaller monomials);
* residues are recovered by a single linear solve against the (always
  invertible) evaluation matrix of the normal set;
* the per-variable multiplication tables are the residues of t_l * m_i
  written over the normal set.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .linalg import QMatrix, inverse, vec_mat
from .partials import DerivBasis, derivative_basis, eval_vector, pairing
from .poly import Mono, Poly, mono_mul, monomials_upto


@dataclass(frozen=True)
class QuotientStructure:
    """Normal set, evaluation matrix and multiplication tables of f's apolar ideal.

    normal_set is ascending in deg-lex and always starts at the constant
    monomial 1; eval_matrix holds the pairings <m_i, g_j>; tables (once
    filled) hold one w x w matrix per variable, representing
    multiplication by that variable on the quotient ring.
    """

    basis: DerivBasis
    normal_set: tuple[Mono, ...]
    eval_matrix: QMatrix
    tables: tuple[QMatrix, ...] | None = None
    # inverse of eval_matrix, factored once and shared by every residue solve
    _solver: QMatrix = field(repr=False, compare=False, default=None)

    @property
    def dimension(self) -> int:
        return len(self.normal_set)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.basis.source.vars


def normal_set(b: DerivBasis) -> QuotientStructure:
    """Greedy normal-set selection for the apolar ideal of a homogeneous source.

    Monomials of degree <= deg(f) are scanned in ascending deg-lex and
    kept iff their pairing vector against the derivative basis increases
    the rank; exactly w = dim(b) monomials get selected and the
    resulting evaluation matrix is invertible.  Monomials above deg(f)
    all lie in the ideal, so the cutoff loses nothing.
    """
    f = b.source
    if not f.is_homogeneous():
        raise ValueError("normal set requires a homogeneous polynomial; "
                         "route general inputs through the homogeneous components")
    w = b.dimension
    selected: list[Mono] = []
    vectors: list[list[Fraction]] = []
    reduced: dict[int, list[Fraction]] = {}  # pivot index -> reduced vector
    for mono in monomials_upto(f.arity, f.total_degree()):
        vec = eval_vector(mono, b)
        work = list(vec)
        for piv in sorted(reduced):
            if work[piv] == 0:
                continue
            other = reduced[piv]
            factor = work[piv] / other[piv]
            for j in range(piv, w):
                if other[j]:
                    work[j] -= factor * other[j]
        piv = next((j for j in range(w) if work[j] != 0), None)
        if piv is None:
            continue
        reduced[piv] = work
        selected.append(mono)
        vectors.append(vec)
        if len(selected) == w:
            break
    if len(selected) != w:
        raise AssertionError("normal set selection did not reach full dimension")
    eval_matrix = QMatrix(vectors)
    solver = inverse(eval_matrix)
    if solver is None:
        raise AssertionError("evaluation matrix is singular")
    return QuotientStructure(basis=b, normal_set=tuple(selected),
                             eval_matrix=eval_matrix, _solver=solver)


def reduce_mod_apolar(g: Poly, q: QuotientStructure) -> Poly:
    """The unique residue of g supported on the normal set.

    The residue shares g's pairing vector against the derivative basis,
    so it falls out of one solve against the evaluation matrix; the
    difference g - residue lies in the apolar ideal.
    """
    coeffs = residue_coefficients(g, q)
    return Poly(q.vars, {m: c for m, c in zip(q.normal_set, coeffs)})


def residue_coefficients(g: Poly, q: QuotientStructure) -> list[Fraction]:
    """Coefficient vector of reduce_mod_apolar(g) over the normal set.

    Solves eval_matrix^T * c = pairings(g) via the factored inverse:
    as a row-vector product that is pairings(g) * eval_matrix^{-1}.
    """
    if g.arity != q.basis.source.arity:
        raise ValueError(f"arity mismatch: {g.arity} vs {q.basis.source.arity}")
    target = [pairing(g, gj) for gj in q.basis.basis]
    return vec_mat(target, q._solver)


def multiplication_tables(q: QuotientStructure) -> QuotientStructure:
    """Fill the per-variable multiplication tables.

    Row i of table l is the residue of t_l * m_i written over the normal
    set; the evaluation-matrix factorization is reused across all
    (variable, monomial) pairs.
    """
    arity = q.basis.source.arity
    tables = []
    for var in range(arity):
        shift = tuple(1 if k == var else 0 for k in range(arity))
        rows = []
        for mono in q.normal_set:
            product = Poly.monomial(q.vars, mono_mul(mono, shift))
            rows.append(residue_coefficients(product, q))
        tables.append(QMatrix(rows))
    return replace(q, tables=tuple(tables))


def quotient(f: Poly) -> QuotientStructure:
    """Normal set plus multiplication tables for a homogeneous nonzero f."""
    return multiplication_tables(normal_set(derivative_basis(f)))


def univariate_mult_table(p: Poly) -> QMatrix:
    """Multiplication table for t on C[t]/<p>, for univariate p of degree >= 1.

    Row i holds the coefficients of t^{i+1} mod p: a plain shift for
    i < d-1, and the negated low coefficients of p (made monic) in the
    last row.  Its minimal polynomial is p normalized to leading
    coefficient 1.
    """
    if p.arity != 1:
        raise ValueError("univariate polynomial required")
    d = p.total_degree()
    if d < 1:
        raise ValueError("degree must be at least 1")
    lead = p.coeff((d,))
    rows = []
    for i in range(d - 1):
        rows.append([1 if j == i + 1 else 0 for j in range(d)])
    rows.append([-p.coeff((j,)) / lead for j in range(d)])
    return QMatrix(rows)


def apolar_member(h: Poly, f: Poly) -> bool:
    """True iff h's derivative operator annihilates f identically.

    Computed directly by differentiating f term by term of h, so it is
    an oracle independent of the residue machinery above.
    """
    if h.arity != f.arity:
        raise ValueError(f"arity mismatch: {h.arity} vs {f.arity}")
    acc = Poly.zero(f.vars)
    for mono, coeff in h.terms.items():
        acc = acc + f.derive(mono).scale(coeff)
    return acc.is_zero()
