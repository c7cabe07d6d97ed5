"""Shared corpus generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's own pipeline:
brute_dpd enumerates every derivative directly, cofactor_det expands a
numeric determinant recursively, and poly_at_matrices substitutes
matrices into a polynomial the long way.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from commro import Poly, QMatrix, deglex_key, monomials_of_degree, rank


def var_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def random_poly(rng: random.Random, nvars: int, degree: int, max_terms: int,
                homogeneous: bool = True) -> Poly:
    """Random nonzero polynomial with small integer coefficients."""
    vars = var_names(nvars)
    if homogeneous:
        pool = monomials_of_degree(nvars, degree)
    else:
        pool = [m for d in range(degree + 1) for m in monomials_of_degree(nvars, d)]
    chosen = rng.sample(pool, min(rng.randint(1, max_terms), len(pool)))
    terms = {}
    for mono in chosen:
        coeff = rng.randint(-9, 9)
        terms[mono] = Fraction(coeff if coeff else 1)
    p = Poly(vars, terms)
    if p.is_zero():
        p = Poly.monomial(vars, chosen[0])
    return p


def random_point(rng: random.Random, arity: int, bound: int = 10 ** 6) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(arity)]


def dilate(f: Poly, alpha: Fraction) -> Poly:
    """f(alpha * x): scales each term by alpha^degree."""
    return Poly(f.vars, {m: c * alpha ** sum(m) for m, c in f.terms.items()})


def brute_dpd(f: Poly) -> int:
    """Derivative-span dimension by differentiating with *every* sub-exponent."""
    if f.is_zero():
        return 0
    bounds = [f.individual_degree(i) for i in range(f.arity)]
    derivatives = []
    for e in itertools.product(*(range(b + 1) for b in bounds)):
        g = f.derive(e)
        if not g.is_zero():
            derivatives.append(g)
    columns = sorted({m for g in derivatives for m in g.terms}, key=deglex_key)
    matrix = QMatrix([[g.coeff(m) for m in columns] for g in derivatives])
    return rank(matrix)


def cofactor_det(matrix: list[list[Fraction]]) -> Fraction:
    """Recursive cofactor expansion along the first row."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = Fraction(0)
    for j in range(n):
        if matrix[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in matrix[1:]]
        sign = -1 if j % 2 else 1
        total += sign * matrix[0][j] * cofactor_det(minor)
    return total


def poly_at_matrices(g: Poly, mats: list[QMatrix]) -> QMatrix:
    """Substitute one square matrix per variable into g."""
    n = mats[0].rows
    powers: dict[tuple[int, int], QMatrix] = {}

    def power(var: int, k: int) -> QMatrix:
        if (var, k) not in powers:
            powers[(var, k)] = QMatrix.identity(n) if k == 0 else power(var, k - 1) @ mats[var]
        return powers[(var, k)]

    total = QMatrix.zeros(n, n)
    for mono, coeff in g.terms.items():
        term = QMatrix.identity(n)
        for var, e in enumerate(mono):
            if e:
                term = term @ power(var, e)
        total = total + term.scale(coeff)
    return total


def span_rank(polys: list[Poly]) -> int:
    """Rank of the coefficient matrix of a polynomial family."""
    columns = sorted({m for p in polys for m in p.terms}, key=deglex_key)
    if not columns:
        return 0
    return rank(QMatrix([[p.coeff(m) for m in columns] for p in polys]))
