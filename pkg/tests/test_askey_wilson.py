import random

import pytest
from gmpy2 import mpq

from qhex import askey_wilson as aw
from qhex.askey_wilson import AWParams

P = AWParams(mpq(1, 2), mpq(2, 7), mpq(3, 11), mpq(5, 13), mpq(3, 5))


def test_p0_is_one():
    assert aw.aw_eval_x(0, P, mpq(3, 4)) == 1


def test_p1_matches_recurrence():
    # from 2x p_0 = A_0 p_1 + B_0 p_0 with B_0 = a + 1/a - A_0
    a, b, c, d = P.a, P.b, P.c, P.d
    A0 = (1 - a * b) * (1 - a * c) * (1 - a * d) / (a * (1 - a * b * c * d))
    B0 = a + 1 / a - A0
    for x in (mpq(0), mpq(1, 3), mpq(-5, 2)):
        assert aw.aw_eval_x(1, P, x) == x - B0 / 2


def test_xi_and_x_forms_agree():
    xi = mpq(7, 4)
    for n in range(4):
        assert aw.aw_eval(n, P, xi) == aw.aw_eval_x(n, P, (xi + 1 / xi) / 2)


@pytest.mark.parametrize("n", range(6))
def test_monic(n):
    assert aw.is_monic_of_degree(n, P)


def test_symmetric():
    rng = random.Random(1)
    xs = [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(20)]
    for n in range(3):
        assert aw.symmetric_under_permutations(n, P, xs)


def test_not_symmetric_in_q():
    # sanity: swapping a parameter with q does change P_2
    other = AWParams(P.q, P.b, P.c, P.d, P.a)
    assert aw.aw_eval_x(2, P, mpq(1, 3)) != aw.aw_eval_x(2, other, mpq(1, 3))


def test_vanishing_normalisation():
    bad = AWParams(mpq(1), mpq(1), mpq(1), mpq(1), mpq(1, 2))
    with pytest.raises(ZeroDivisionError):
        aw.aw_eval_x(1, bad, mpq(1, 3))


def test_ksd_m1():
    a, b, q = mpq(2, 9), mpq(5, 7), mpq(3, 5)
    lhs, rhs = aw.ksd_det(a, b, 1, [3], q)
    assert lhs == rhs == aw.pochs([a, b], q, 3)


@pytest.mark.parametrize("m,ls", [(2, (0, 1)), (2, (1, 4)), (3, (0, 2, 5)), (3, (1, 3, 4))])
def test_ksd(m, ls):
    lhs, rhs = aw.ksd_det(mpq(2, 9), mpq(5, 7), m, ls, mpq(3, 5))
    assert lhs == rhs


def test_ksd_rejects_unsorted():
    with pytest.raises(ValueError):
        aw.ksd_det(mpq(2, 9), mpq(5, 7), 2, (3, 1), mpq(3, 5))


def test_cauchy_binet():
    rng = random.Random(2)
    for _ in range(5):
        A = [[mpq(rng.randint(-5, 5)) for _ in range(6)] for _ in range(3)]
        B = [[mpq(rng.randint(-5, 5)) for _ in range(3)] for _ in range(6)]
        lhs, rhs = aw.cauchy_binet_sides(A, B)
        assert lhs == rhs


def test_dsl_trivial():
    p, xi = aw.DSL_POINT
    assert aw.dsl_sides(0, 2, p, xi) == (1, 1)


def test_dsl_one_by_one():
    p, xi = aw.DSL_POINT
    lhs, rhs = aw.dsl_sides(1, 1, p, xi)
    assert lhs == aw.aw_eval(1, p, xi) == rhs


@pytest.mark.parametrize("m,n", [(2, 2), (3, 1), (1, 3)])
def test_dsl(m, n):
    assert aw.dsl_check(m, n, *aw.DSL_POINT)


def test_qdt_empty_rhs():
    a, b, s = aw.QDT_POINT
    lhs, rhs = aw.qdt_sides(2, 1, 0, 0, a, b, s)
    assert lhs == rhs == aw.qdt_constant(2, 1, 0, 0, a, b, s * s)


@pytest.mark.parametrize("m,n,M,N", [(2, 1, 1, 0), (2, 1, 1, 1), (4, 2, 2, 1), (0, 2, 2, 2)])
def test_qdt(m, n, M, N):
    assert aw.qdt_check(m, n, M, N, *aw.QDT_POINT)


def test_qdt_needs_even_m():
    with pytest.raises(ValueError):
        aw.qdt_check(1, 1, 1, 0, *aw.QDT_POINT)


def test_qdt_detects_wrong_constant():
    a, b, s = aw.QDT_POINT
    lhs, rhs = aw.qdt_sides(2, 1, 1, 1, a, b, s)
    assert lhs != 2 * rhs
