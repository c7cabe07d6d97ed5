"""Branching-program constructions from derivative spans.

Four builders live here:

* build_commro: a commutative ROABP for a homogeneous polynomial whose
  width equals the derivative-span dimension.  The layer for variable
  x_l is the truncated exponential sum I + A_l x_l + A_l^2 x_l^2 / 2! +
  ... of the apolar multiplication table A_l, cut at the individual
  degree of x_l (higher powers vanish because the table is nilpotent).
  The left boundary selects the normal-set position of the monomial 1;
  the right boundary has closed form v_j = e_j! * coeff_f(m_j) over the
  normal-set monomials m_j = t^{e_j}.

* build_commro_general: block-diagonal direct sum of build_commro over
  the nonzero homogeneous components (a 1x1 identity block carries the
  constant term), for arbitrary nonzero input.

* build_smabp: for a set-multilinear polynomial, one *linear* layer per
  partition part, sum of A_k x_k over the part's variables, same tables
  and boundary vectors.

* build_diagro_from_waring: a diagonal ROABP from a Waring
  decomposition.  For a degree-d term c * l(x)^d, the power l^d / d! is
  the z^d coefficient of prod_j exp_d(a_j x_j z), extracted exactly by
  Lagrange interpolation over nd+1 integer nodes; each node occupies
  one diagonal slot and the interpolation weights fold into u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abp import Abp, Layer
from .apolar import QuotientStructure, quotient
from .linalg import QMatrix, polymat_mul, solve
from .poly import Poly, mono_factorial

__all__ = [
    "WaringDecomposition",
    "build_commro",
    "build_commro_general",
    "build_smabp",
    "build_diagro_from_waring",
    "waring_of_monomial",
    "waring_expand",
    "boundary_vector_by_solve",
]


@dataclass(frozen=True)
class WaringDecomposition:
    """A sum of scaled d-th powers of linear forms: sum_i c_i * l_i(x)^d."""

    degree: int
    terms: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be at least 1; constants do not need a decomposition")
        if not self.terms:
            raise ValueError("empty decomposition")
        arities = {len(form) for _, form in self.terms}
        if len(arities) != 1:
            raise ValueError("linear forms of mixed arity")
        for _, form in self.terms:
            if all(a == 0 for a in form):
                raise ValueError("zero linear form")

    @property
    def arity(self) -> int:
        return len(self.terms[0][1])


def waring_expand(w: WaringDecomposition, vars: Sequence[str]) -> Poly:
    """Brute-force expansion sum_i c_i * l_i(x)^d as a polynomial."""
    vars = tuple(vars)
    if len(vars) != w.arity:
        raise ValueError("variable list does not match the decomposition arity")
    total = Poly.zero(vars)
    for coeff, form in w.terms:
        linear = Poly.zero(vars)
        for i, a in enumerate(form):
            if a:
                linear = linear + Poly.variable(vars, i).scale(a)
        total = total + (linear ** w.degree).scale(coeff)
    return total


def _closed_form_v(q: QuotientStructure, f: Poly) -> tuple[Fraction, ...]:
    # v_j = e_j! * coeff_f(m_j): the derivative operator of f, as a linear
    # functional on residues, evaluated on each normal-set monomial.
    return tuple(mono_factorial(m) * f.coeff(m) for m in q.normal_set)


def _truncated_exponential_layers(q: QuotientStructure, f: Poly) -> list[Layer]:
    layers = []
    width = q.dimension
    for var in range(f.arity):
        table = q.tables[var]
        d_var = f.individual_degree(var)
        terms = [(var, 0, QMatrix.identity(width))]
        power = QMatrix.identity(width)
        for k in range(1, d_var + 1):
            power = power @ table
            terms.append((var, k, power.scale(Fraction(1, math.factorial(k)))))
        # the table is nilpotent past the individual degree; everything
        # truncated away is exactly zero
        if not (power @ table).is_zero():
            raise AssertionError("multiplication table not nilpotent at the individual degree")
        layers.append(Layer(terms))
    return layers


def build_commro(f: Poly) -> Abp:
    """Commutative ROABP of width equal to f's derivative-span dimension.

    f must be nonzero and homogeneous; the computed polynomial equals f
    exactly and all coefficient matrices commute pairwise.
    """
    if f.is_zero():
        raise ValueError("cannot build a branching program for the zero polynomial")
    if not f.is_homogeneous():
        raise ValueError("homogeneous input required; use build_commro_general")
    q = quotient(f)
    layers = _truncated_exponential_layers(q, f)
    width = q.dimension
    u = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(width))
    v = _closed_form_v(q, f)
    return Abp(kind="commutative", vars=f.vars, width=width, u=u, v=v,
               layers=tuple(layers), order=tuple(range(len(layers))))


def _direct_sum(blocks: list[Abp], vars: tuple[str, ...]) -> Abp:
    width = sum(b.width for b in blocks)
    offsets = []
    at = 0
    for b in blocks:
        offsets.append(at)
        at += b.width
    layers = []
    for var in range(len(vars)):
        powers: set[int] = set()
        for b in blocks:
            for lvar, power, _ in b.layers[var].terms:
                powers.add(power)
        terms = []
        for power in sorted(powers):
            data = [[Fraction(0)] * width for _ in range(width)]
            for b, off in zip(blocks, offsets):
                mat = next((m for _, p, m in b.layers[var].terms if p == power), None)
                if mat is None:
                    continue
                for i, row in enumerate(mat.data):
                    for j, x in enumerate(row):
                        if x:
                            data[off + i][off + j] = x
            terms.append((var, power, QMatrix(data)))
        layers.append(Layer(terms))
    u = tuple(x for b in blocks for x in b.u)
    v = tuple(x for b in blocks for x in b.v)
    return Abp(kind="commutative", vars=vars, width=width, u=u, v=v,
               layers=tuple(layers), order=tuple(range(len(layers))))


def _constant_block(vars: tuple[str, ...], value: Fraction) -> Abp:
    one = QMatrix.identity(1)
    layers = tuple(Layer([(var, 0, one)]) for var in range(len(vars)))
    return Abp(kind="commutative", vars=vars, width=1,
               u=(Fraction(1),), v=(Fraction(value),),
               layers=layers, order=tuple(range(len(vars))))


def build_commro_general(f: Poly) -> Abp:
    """Commutative ROABP for arbitrary nonzero f.

    Direct sum of the homogeneous constructions over f's nonzero
    components, in ascending degree order; the degree-0 component rides
    in a 1x1 identity block with u * v equal to the constant.  Total
    width is at most (d+1)^2 times the derivative-span dimension of f.
    """
    if f.is_zero():
        raise ValueError("cannot build a branching program for the zero polynomial")
    blocks: list[Abp] = []
    for degree, component in enumerate(f.homogeneous_components()):
        if component.is_zero():
            continue
        if degree == 0:
            blocks.append(_constant_block(f.vars, component.coeff((0,) * f.arity)))
        else:
            blocks.append(build_commro(component))
    if len(blocks) == 1:
        return blocks[0]
    return _direct_sum(blocks, f.vars)


def _validate_set_multilinear(f: Poly, partition: Sequence[Sequence[int]]) -> None:
    seen: set[int] = set()
    for part in partition:
        pset = set(part)
        if not pset:
            raise ValueError("empty partition part")
        if pset & seen:
            raise ValueError("partition parts overlap")
        seen |= pset
    if seen != set(range(f.arity)):
        raise ValueError("partition does not cover the variables exactly")
    for mono in f.terms:
        for part in partition:
            picked = sum(mono[i] for i in part)
            if picked != 1:
                bad = Poly.monomial(f.vars, mono)
                raise ValueError(
                    f"not set-multilinear: monomial {bad} takes {picked} variables "
                    f"from part {sorted(part)}"
                )


def build_smabp(f: Poly, partition: Sequence[Sequence[int]]) -> Abp:
    """Commutative set-multilinear ABP with one linear layer per part.

    Layer j is sum of A_k x_k over the variables k of part j, built from
    the same apolar multiplication tables as the read-once construction;
    width equals the derivative-span dimension of f.
    """
    if f.is_zero():
        raise ValueError("cannot build a branching program for the zero polynomial")
    _validate_set_multilinear(f, partition)
    q = quotient(f)
    width = q.dimension
    layers = [Layer([(var, 1, q.tables[var]) for var in part]) for part in partition]
    u = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(width))
    v = _closed_form_v(q, f)
    return Abp(kind="set_multilinear", vars=f.vars, width=width, u=u, v=v,
               layers=tuple(layers), order=tuple(range(len(layers))))


def _lagrange_coefficient_weights(nodes: Sequence[Fraction], degree: int) -> list[Fraction]:
    """Weights w_i so that sum_i w_i * p(z_i) is the z^degree coefficient of p.

    Valid for any polynomial p of degree < len(nodes); w_i is the
    z^degree coefficient of the i-th Lagrange basis polynomial.
    """
    weights = []
    for i, zi in enumerate(nodes):
        numerator = [Fraction(1)]  # coefficients of prod_{j != i} (z - z_j), low to high
        denominator = Fraction(1)
        for j, zj in enumerate(nodes):
            if j == i:
                continue
            denominator *= zi - zj
            shifted = [Fraction(0)] + numerator
            for k in range(len(numerator)):
                shifted[k] -= zj * numerator[k]
            numerator = shifted
        weights.append(numerator[degree] / denominator)
    return weights


def build_diagro_from_waring(w: WaringDecomposition, vars: Sequence[str]) -> Abp:
    """Diagonal ROABP computing the expansion of a Waring decomposition.

    Each decomposition term contributes a block of nd+1 diagonal slots,
    one per interpolation node; slot i of layer j holds the truncated
    exponential univariate exp_d(a_j x_j z_i).  Width is exactly
    (number of terms) * (nd + 1).
    """
    vars = tuple(vars)
    if len(vars) != w.arity:
        raise ValueError("variable list does not match the decomposition arity")
    n, d = w.arity, w.degree
    t = n * d + 1
    nodes = [Fraction(k) for k in range(1, t + 1)]
    weights = _lagrange_coefficient_weights(nodes, d)
    width = len(w.terms) * t
    d_fact = math.factorial(d)

    u = []
    for coeff, _ in w.terms:
        u.extend(coeff * d_fact * wt for wt in weights)
    v = [Fraction(1)] * width

    layers = []
    for var in range(n):
        terms = [(var, 0, QMatrix.identity(width))]
        for k in range(1, d + 1):
            inv_kfact = Fraction(1, math.factorial(k))
            diag = []
            for _, form in w.terms:
                a = form[var]
                diag.extend((a * z) ** k * inv_kfact for z in nodes)
            terms.append((var, k, QMatrix.diagonal(diag)))
        layers.append(Layer(terms))
    return Abp(kind="diagonal", vars=vars, width=width, u=tuple(u), v=tuple(v),
               layers=tuple(layers), order=tuple(range(n)))


def waring_of_monomial(n: int) -> WaringDecomposition:
    """The 2^(n-1)-term sign decomposition of x_1 x_2 ... x_n.

    x1...xn = 1/(2^(n-1) n!) * sum over sign patterns e of
    (prod e) * (x1 + e_2 x2 + ... + e_n xn)^n; the expansion is verified
    by brute force before the decomposition is returned.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    scale = Fraction(1, 2 ** (n - 1) * math.factorial(n))
    terms = []
    for bits in range(2 ** (n - 1)):
        signs = [1] + [1 if (bits >> i) & 1 == 0 else -1 for i in range(n - 1)]
        sign_product = 1
        for s in signs[1:]:
            sign_product *= s
        terms.append((scale * sign_product, tuple(Fraction(s) for s in signs)))
    decomposition = WaringDecomposition(degree=n, terms=tuple(terms))
    vars = tuple(f"x{i + 1}" for i in range(n))
    expected = Poly.monomial(vars, (1,) * n)
    if waring_expand(decomposition, vars) != expected:
        raise RuntimeError("sign decomposition failed its expansion check")
    return decomposition


def boundary_vector_by_solve(abp: Abp, f: Poly,
                             max_terms: int = 1 << 20) -> list[Fraction] | None:
    """Recover the right boundary vector by a linear solve; the oracle route.

    Matches the symbolic first row of the layer product against f:
    unknowns v_j, one equation per monomial of the combined support.
    Returns None when the system is inconsistent.
    """
    from .linalg import PolyMatrix

    row = None
    for idx in abp.order:
        sym = abp.layers[idx].symbolic(abp.vars, abp.width)
        if row is None:
            start = PolyMatrix(abp.vars, [[Poly.constant(abp.vars, c) for c in abp.u]])
            row = polymat_mul(start, sym)
        else:
            row = polymat_mul(row, sym)
    entries = [row.data[0][j] for j in range(abp.width)]
    monomials = sorted({m for p in entries for m in p.terms} | set(f.terms))
    matrix = QMatrix([[p.coeff(m) for p in entries] for m in monomials])
    rhs = [f.coeff(m) for m in monomials]
    return solve(matrix, rhs)
