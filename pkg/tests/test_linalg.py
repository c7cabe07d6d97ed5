import random
from fractions import Fraction

import pytest

from commro import (CapExceeded, Poly, PolyMatrix, QMatrix, commute, inverse,
                    minimal_polynomial, parse_poly, polymat_mul, rank, solve)
from commro.detspecial import det2_golden, det_polynomial
from commro.linalg import dot, vec_mat

from helpers import random_poly, random_point

# the worked 5x5 multiplication table with minimal polynomial
# t^5 - 10 t^4 - 7 t^3 + 2 t^2 - 3
SHIFT5 = QMatrix([
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
    [3, 0, -2, 7, 10],
])


def random_qmatrix(rng, rows, cols, bound=9):
    return QMatrix([[Fraction(rng.randint(-bound, bound)) for _ in range(cols)]
                    for _ in range(rows)])


def test_rank_examples():
    assert rank(QMatrix.identity(4)) == 4
    assert rank(QMatrix.zeros(3, 5)) == 0
    # invertible: its minimal polynomial has nonzero constant term -3
    assert rank(SHIFT5) == 5


def test_rank_transpose_invariant():
    rng = random.Random(3)
    for _ in range(15):
        m = random_qmatrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(m) == rank(m.transpose())


def test_rank_cap():
    with pytest.raises(CapExceeded):
        rank(QMatrix.zeros(8, 8), max_entries=63)


def test_solve_examples():
    assert solve(QMatrix.identity(2), [1, 2]) == [1, 2]
    assert solve(QMatrix.zeros(1, 1), [1]) is None
    # back-substitution by hand: x2 = 2, x1 = 3 - x2 = 1
    assert solve(QMatrix([[1, 1], [0, 2]]), [3, 4]) == [1, 2]


def test_solve_satisfies_system():
    rng = random.Random(5)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_qmatrix(rng, rows, cols)
        b = [Fraction(rng.randint(-9, 9)) for _ in range(rows)]
        x = solve(m, b)
        if x is not None:
            assert vec_mat(x, m.transpose()) == b


def test_inverse_round_trip():
    rng = random.Random(11)
    found = 0
    while found < 10:
        m = random_qmatrix(rng, 4, 4)
        inv = inverse(m)
        if inv is None:
            continue
        assert m @ inv == QMatrix.identity(4)
        found += 1


def test_commute_examples():
    rng = random.Random(2)
    a = random_qmatrix(rng, 3, 3)
    assert commute(QMatrix.identity(3), a)
    up = QMatrix([[0, 1], [0, 0]])
    down = QMatrix([[0, 0], [1, 0]])
    assert not commute(up, down)
    d1 = QMatrix.diagonal([1, 2, 3])
    d2 = QMatrix.diagonal([-5, 0, 7])
    assert commute(d1, d2)
    with pytest.raises(ValueError):
        commute(QMatrix.identity(2), QMatrix.identity(3))


def test_minimal_polynomial_examples():
    t = ("t",)
    assert minimal_polynomial(QMatrix.identity(3)) == parse_poly("t - 1", t)
    assert minimal_polynomial(QMatrix.zeros(2, 2)) == parse_poly("t", t)
    assert minimal_polynomial(SHIFT5) == parse_poly("t^5 - 10*t^4 - 7*t^3 + 2*t^2 - 3", t)


def test_minimal_polynomial_annihilates():
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(1, 4)
        m = random_qmatrix(rng, n, n, bound=3)
        p = minimal_polynomial(m)
        assert p.total_degree() <= n
        assert p.coeff((p.total_degree(),)) == 1  # monic
        total = QMatrix.zeros(n, n)
        power = QMatrix.identity(n)
        for k in range(p.total_degree() + 1):
            total = total + power.scale(p.coeff((k,)))
            power = power @ m
        assert total.is_zero()


def test_polymat_mul_examples():
    vars = ("x1", "x2")
    x1 = Poly.variable(vars, 0)
    x2 = Poly.variable(vars, 1)
    m = PolyMatrix(vars, [[x1, x2], [x2, x1]])
    assert polymat_mul(PolyMatrix.identity(vars, 2), m) == m
    prod = polymat_mul(PolyMatrix(vars, [[x1]]), PolyMatrix(vars, [[x2]]))
    assert prod[0, 0] == x1 * x2


def test_polymat_mul_golden_product():
    # the four golden layers multiply, in the printed order, to a matrix
    # whose (1,6) entry is the *negated* 2x2 determinant: the apolar
    # reduction sends x1_1*x2_2 to -x1_2*x2_1, so the path through
    # x1_1, x2_2 picks up a minus sign
    golden = det2_golden()
    prod = golden[0]
    for m in golden[1:]:
        prod = polymat_mul(prod, m)
    assert prod[0, 5] == -det_polynomial(2)


def test_polymat_specialization_homomorphism():
    rng = random.Random(31)
    vars = ("x1", "x2", "x3")
    for _ in range(10):
        a = PolyMatrix(vars, [[random_poly(rng, 3, 2, 3, homogeneous=False)
                               for _ in range(2)] for _ in range(2)])
        b = PolyMatrix(vars, [[random_poly(rng, 3, 2, 3, homogeneous=False)
                               for _ in range(2)] for _ in range(2)])
        point = random_point(rng, 3, bound=40)
        assert polymat_mul(a, b).specialize(point) == a.specialize(point) @ b.specialize(point)


def test_dot_and_vec_mat():
    assert dot([Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]) == 11
    m = QMatrix([[1, 2], [3, 4]])
    assert vec_mat([Fraction(1), Fraction(1)], m) == [4, 6]
