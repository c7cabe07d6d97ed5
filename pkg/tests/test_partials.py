import random
from fractions import Fraction

import pytest

from commro import (Poly, QMatrix, derivative_basis, dpd, eval_vector,
                    pairing, parse_poly, rank)
from commro.detspecial import det_polynomial

from helpers import brute_dpd, dilate, random_poly, span_rank

V2 = ("x1", "x2")


def test_basis_of_x1x2():
    f = parse_poly("x1*x2", V2)
    b = derivative_basis(f)
    assert b.dimension == 4
    # discovery order: f, then the first-order derivatives in deg-lex
    # order of the differentiating monomial (d/dx1 gives x2), then 1
    assert list(b.basis) == [f, Poly.variable(V2, 1), Poly.variable(V2, 0),
                             Poly.constant(V2, 1)]
    assert b.basis[0] == b.source


def test_univariate_power_dimension():
    for d in (1, 3, 5):
        f = parse_poly(f"x^{d}", ("x",))
        assert dpd(f) == d + 1


def test_determinant_dimension():
    assert dpd(det_polynomial(2)) == 6   # C(4, 2)
    assert dpd(det_polynomial(3)) == 20  # C(6, 3)


def test_dpd_degenerate_cases():
    assert dpd(Poly.zero(V2)) == 0
    assert dpd(Poly.constant(V2, 7)) == 1
    with pytest.raises(ValueError):
        derivative_basis(Poly.zero(V2))


def test_dpd_matches_brute_force():
    rng = random.Random(41)
    for _ in range(20):
        f = random_poly(rng, 3, 3, 6, homogeneous=False)
        assert dpd(f) == brute_dpd(f)


def test_dpd_of_monomial_is_product_of_exponents_plus_one():
    rng = random.Random(43)
    for _ in range(15):
        mono = tuple(rng.randint(0, 3) for _ in range(3))
        f = Poly.monomial(("x1", "x2", "x3"), mono)
        expected = 1
        for e in mono:
            expected *= e + 1
        assert dpd(f) == expected == brute_dpd(f)


def test_pairing_examples():
    f = parse_poly("x1*x2", V2)
    assert pairing(f, f) == 1
    assert pairing(parse_poly("x1^2", V2), f) == 0
    det2 = det_polynomial(2)
    assert pairing(det2, det2) == 2


def test_pairing_counts_factorials():
    f = parse_poly("x1^2*x2", V2)
    assert pairing(f, f) == 2  # e! = 2! * 1!


def test_pairing_symmetry():
    rng = random.Random(47)
    for _ in range(25):
        g = random_poly(rng, 3, 3, 5, homogeneous=False)
        h = random_poly(rng, 3, 3, 5, homogeneous=False)
        assert pairing(g, h) == pairing(h, g)


def test_pairing_arity_mismatch():
    with pytest.raises(ValueError):
        pairing(Poly.variable(V2, 0), Poly.variable(("x",), 0))


def test_eval_vector_examples():
    b = derivative_basis(parse_poly("x1*x2", V2))
    # basis order is (x1x2, x2, x1, 1)
    assert eval_vector((0, 0), b) == [0, 0, 0, 1]
    assert eval_vector((1, 1), b) == [1, 0, 0, 0]
    assert eval_vector((2, 0), b) == [0, 0, 0, 0]


def test_dpd_invariant_under_dilation():
    rng = random.Random(53)
    for _ in range(10):
        f = random_poly(rng, 3, 3, 6, homogeneous=False)
        alpha = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert dpd(dilate(f, alpha)) == dpd(f)


def test_component_dimension_bound():
    rng = random.Random(59)
    for _ in range(10):
        f = random_poly(rng, 3, 3, 8, homogeneous=False)
        d = f.total_degree()
        for h in f.homogeneous_components():
            if not h.is_zero():
                assert dpd(h) <= (d + 1) * dpd(f)


def test_basis_is_closed_under_derivatives():
    rng = random.Random(61)
    for _ in range(10):
        f = random_poly(rng, 3, 3, 6)
        b = derivative_basis(f)
        base_rank = span_rank(list(b.basis))
        assert base_rank == b.dimension
        extended = list(b.basis)
        for g in b.basis:
            for var in range(f.arity):
                shift = tuple(1 if k == var else 0 for k in range(f.arity))
                dg = g.derive(shift)
                if not dg.is_zero():
                    extended.append(dg)
        assert span_rank(extended) == base_rank


def test_basis_matrix_shape_and_rank():
    f = det_polynomial(2)
    b = derivative_basis(f)
    assert b.matrix.rows == b.dimension
    assert b.matrix.cols == len(b.monomials)
    assert rank(b.matrix) == b.dimension
    assert isinstance(b.matrix, QMatrix)
