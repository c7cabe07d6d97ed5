import math
import random
from fractions import Fraction

import pytest

from commro import (Poly, WaringDecomposition, boundary_vector_by_solve,
                    build_commro, build_commro_general, build_diagro_from_waring,
                    build_smabp, check_kind, dpd, eval_abp, expand_abp,
                    parse_poly, quotient, waring_expand, waring_of_monomial)
from commro.detspecial import det2_golden, det_polynomial

from helpers import cofactor_det, random_poly

V2 = ("x1", "x2")
V3 = ("x1", "x2", "x3")


def test_commro_x1x2():
    f = parse_poly("x1*x2", V2)
    abp = build_commro(f)
    assert abp.width == 4
    assert abp.u == (1, 0, 0, 0)
    assert abp.v == (0, 0, 0, 1)
    assert expand_abp(abp) == f
    assert check_kind(abp)


def test_commro_univariate_power():
    for d in (1, 2, 4):
        f = parse_poly(f"x^{d}", ("x",))
        abp = build_commro(f)
        assert abp.width == d + 1
        assert len(abp.layers) == 1
        assert expand_abp(abp) == f
        # v selects the top monomial scaled by d!
        assert abp.v == tuple([0] * d + [math.factorial(d)])


def test_commro_det2_matches_golden_layers():
    det2 = det_polynomial(2)
    abp = build_commro(det2)
    assert abp.width == 6
    golden = det2_golden()
    for layer, expected in zip(abp.layers, golden):
        assert layer.symbolic(det2.vars, 6) == expected
    assert expand_abp(abp) == det2
    # the output coefficient sits at the last normal-set slot, with the
    # sign that makes u^T (prod M) v equal the determinant exactly
    assert abp.u == (1, 0, 0, 0, 0, 0)
    assert abp.v == (0, 0, 0, 0, 0, -1)


def test_commro_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_commro(Poly.zero(V2))
    with pytest.raises(ValueError):
        build_commro(parse_poly("x1*x2 + x1", V2))
    with pytest.raises(ValueError):
        build_commro_general(Poly.zero(V2))


def test_commro_width_equals_dpd():
    rng = random.Random(211)
    for _ in range(10):
        f = random_poly(rng, rng.randint(2, 4), rng.randint(1, 3), 6)
        abp = build_commro(f)
        assert abp.width == dpd(f)
        assert expand_abp(abp) == f
        assert check_kind(abp)


def test_closed_form_v_matches_linear_solve():
    rng = random.Random(223)
    for _ in range(8):
        f = random_poly(rng, 3, rng.randint(1, 3), 5)
        abp = build_commro(f)
        solved = boundary_vector_by_solve(abp, f)
        assert solved is not None
        assert tuple(solved) == abp.v


def test_general_is_identity_on_homogeneous():
    f = parse_poly("x1*x2", V2)
    assert build_commro_general(f) == build_commro(f)


def test_constant_polynomial_builds():
    f = Poly.constant(V2, Fraction(5, 3))
    for abp in (build_commro(f), build_commro_general(f)):
        assert abp.width == 1
        assert expand_abp(abp) == f


def test_general_x1x2_plus_one():
    f = parse_poly("x1*x2 + 1", V2)
    abp = build_commro_general(f)
    assert abp.width == 5  # 1x1 constant block + width-4 block
    assert expand_abp(abp) == f
    assert check_kind(abp)


def test_general_x_squared_plus_x():
    f = parse_poly("x^2 + x", ("x",))
    abp = build_commro_general(f)
    # blocks of width 2 (degree 1) and 3 (degree 2), ascending degree
    assert abp.width == 5
    assert dpd(f) == 3  # {x^2+x, 2x+1, 2}
    assert abp.width <= (f.total_degree() + 1) ** 2 * dpd(f)
    assert expand_abp(abp) == f


def test_general_bound_and_expansion_random():
    rng = random.Random(227)
    for _ in range(10):
        f = random_poly(rng, 3, 3, 8, homogeneous=False)
        abp = build_commro_general(f)
        d = f.total_degree()
        assert abp.width <= (d + 1) ** 2 * dpd(f)
        assert expand_abp(abp) == f
        assert check_kind(abp)


def test_smabp_two_singletons():
    vars = ("x1", "y1")
    f = parse_poly("x1*y1", vars)
    abp = build_smabp(f, [[0], [1]])
    assert abp.width == 4
    assert abp.kind == "set_multilinear"
    assert expand_abp(abp) == f
    # layers are linear: no constant matrices at all
    for layer in abp.layers:
        assert all(power == 1 for _, power, _ in layer.terms)


def test_smabp_det2_row_partition():
    det2 = det_polynomial(2)
    abp = build_smabp(det2, [[0, 1], [2, 3]])
    assert abp.width == 6
    assert expand_abp(abp) == det2
    assert check_kind(abp)
    # each layer is sum of A_k x_k over its row, tables from the quotient
    q = quotient(det2)
    for part, layer in zip(([0, 1], [2, 3]), abp.layers):
        assert [(var, power) for var, power, _ in layer.terms] == [(v, 1) for v in part]
        for var, _, mat in layer.terms:
            assert mat == q.tables[var]


def test_smabp_three_variable_monomial():
    vars = ("x1", "y1", "z1")
    f = Poly.monomial(vars, (1, 1, 1))
    abp = build_smabp(f, [[0], [1], [2]])
    assert abp.width == 8 == dpd(f)
    assert expand_abp(abp) == f


def test_smabp_det3_evaluates_determinants():
    det3 = det_polynomial(3)
    abp = build_smabp(det3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    assert abp.width == 20
    rng = random.Random(229)
    for _ in range(5):
        matrix = [[Fraction(rng.randint(-9, 9)) for _ in range(3)] for _ in range(3)]
        flat = [x for row in matrix for x in row]
        assert eval_abp(abp, flat) == cofactor_det(matrix)


def test_smabp_det4_evaluates_determinants():
    det4 = det_polynomial(4)
    abp = build_smabp(det4, [[i * 4 + j for j in range(4)] for i in range(4)])
    assert abp.width == 70
    rng = random.Random(233)
    for _ in range(3):
        matrix = [[Fraction(rng.randint(-9, 9)) for _ in range(4)] for _ in range(4)]
        flat = [x for row in matrix for x in row]
        assert eval_abp(abp, flat) == cofactor_det(matrix)


def test_smabp_partition_violation_names_offender():
    # x2*x3 takes no variable from the part {x1}
    f = parse_poly("x1*x2 + x2*x3", V3)
    with pytest.raises(ValueError, match=r"x2\*x3"):
        build_smabp(f, [[0], [1, 2]])
    with pytest.raises(ValueError, match="cover"):
        build_smabp(parse_poly("x1*x2", V2), [[0]])


def test_diagro_single_variable_power():
    w = WaringDecomposition(degree=3, terms=((Fraction(1), (Fraction(1),)),))
    abp = build_diagro_from_waring(w, ("x1",))
    assert expand_abp(abp) == parse_poly("x1^3", ("x1",))
    assert check_kind(abp)


def test_diagro_two_term_square():
    w = WaringDecomposition(degree=2, terms=(
        (Fraction(1, 4), (Fraction(1), Fraction(1))),
        (Fraction(-1, 4), (Fraction(1), Fraction(-1))),
    ))
    abp = build_diagro_from_waring(w, V2)
    assert expand_abp(abp) == parse_poly("x1*x2", V2)
    assert abp.width == 2 * (2 * 2 + 1)


def test_diagro_monomial_x1x2x3():
    w = waring_of_monomial(3)
    abp = build_diagro_from_waring(w, V3)
    assert abp.width <= 4 * (3 * 3 + 1) == 40
    assert abp.kind == "diagonal" and check_kind(abp)
    assert expand_abp(abp) == Poly.monomial(V3, (1, 1, 1))


def test_diagro_rejects_degenerate_input():
    with pytest.raises(ValueError):
        WaringDecomposition(degree=0, terms=((Fraction(1), (Fraction(1),)),))
    with pytest.raises(ValueError):
        WaringDecomposition(degree=2, terms=())
    with pytest.raises(ValueError):
        WaringDecomposition(degree=2, terms=((Fraction(1), (Fraction(0), Fraction(0))),))


def test_waring_of_monomial_small():
    w1 = waring_of_monomial(1)
    assert w1.terms == ((Fraction(1), (Fraction(1),)),)
    w2 = waring_of_monomial(2)
    assert set(w2.terms) == {
        (Fraction(1, 4), (Fraction(1), Fraction(1))),
        (Fraction(-1, 4), (Fraction(1), Fraction(-1))),
    }
    for n in (1, 2, 3, 4):
        w = waring_of_monomial(n)
        assert len(w.terms) == 2 ** (n - 1)
        vars = tuple(f"x{i+1}" for i in range(n))
        assert waring_expand(w, vars) == Poly.monomial(vars, (1,) * n)


def test_layers_commute_across_constructions():
    det2 = det_polynomial(2)
    commro = build_commro(det2)
    smabp = build_smabp(det2, [[0, 1], [2, 3]])
    # every pair drawn from both artifacts commutes (same quotient tables)
    mats = commro.coefficient_matrices() + smabp.coefficient_matrices()
    from commro import commute
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert commute(mats[i], mats[j])
