import random

import pytest
from gmpy2 import mpq, mpz
from hypothesis import given, settings
from hypothesis import strategies as st

from qhex.exactalg import (
    ZERO,
    FactorProduct,
    InexactDivisionError,
    KroneckerRows,
    Mono,
    PolyMatrix,
    QLaurent,
    SingularTermError,
    _bareiss_det,
    _cofactor_det,
    binomial,
    binomial_div,
    cancel,
    det,
    format_laurent,
    gaussian,
    int_det,
    int_det_leading,
    invert_q,
    parse_laurent,
    t,
)

one = QLaurent.one()


def L(d):
    return QLaurent({e: mpq(c) for e, c in d.items()})


laurents = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(L)


# -- cancel / binomial_div -------------------------------------------------


def test_cancel_identity():
    p = FactorProduct.one().times_binomial(Mono(1, 4)).times_binomial(Mono(1, 4), -1)
    assert cancel(p) == (one, one)


def test_cancel_zero_numerator():
    p = FactorProduct.one().times_binomial(Mono(1, 0))
    assert cancel(p) is ZERO


def test_cancel_expands():
    p = FactorProduct.one().times_binomial(Mono(-1, 4)).times_binomial(Mono(1, 8), -1)
    assert cancel(p) == (L({0: 1, 4: 1}), L({0: 1, 8: -1}))


def test_cancel_zero_denominator():
    p = FactorProduct.one().times_binomial(Mono(1, 0), -1)
    with pytest.raises(SingularTermError):
        cancel(p)


def test_binomial_div():
    b = binomial(1, 4)
    assert binomial_div(L({0: 1, 8: -1}), b) == L({0: 1, 4: 1})
    assert binomial_div(L({0: 1, 4: -1}), b) == one
    with pytest.raises(InexactDivisionError):
        binomial_div(L({0: 1, 4: 1}), b)


@given(laurents, st.sampled_from([1, -1, 2]), st.integers(1, 6))
def test_div_binomial_roundtrip(p, c, e):
    prod = p.mul_binomial(mpq(c), e)
    assert prod.div_binomial(mpq(c), e) == p


@given(laurents, st.integers(1, 6))
def test_div_binomial_exact_or_raises(p, e):
    try:
        q = p.div_binomial(mpq(1), e)
    except InexactDivisionError:
        return
    assert q.mul_binomial(mpq(1), e) == p


# -- ring axioms -----------------------------------------------------------


@settings(max_examples=60)
@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == QLaurent.zero()


@given(laurents, laurents)
def test_invert_q_homomorphism(a, b):
    assert invert_q(invert_q(a)) == a
    assert invert_q(a * b) == invert_q(a) * invert_q(b)
    assert invert_q(a + b) == invert_q(a) + invert_q(b)


@given(laurents, laurents)
def test_divexact(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_invert_q_example():
    assert invert_q(L({2: 1, 0: 2})) == L({-2: 1, 0: 2})


@given(laurents)
def test_text_roundtrip(p):
    assert parse_laurent(format_laurent(p)) == p


def test_text_form():
    p = L({-6: mpq(1, 2), 0: 1, 6: mpq(1, 2)})
    assert format_laurent(p) == "1/2·q^(-3/2) + 1 + 1/2·q^(3/2)"
    assert "q^[1/4]" in format_laurent(t)


def test_gaussian_coefficients():
    i = gaussian(0, 1)
    p = QLaurent({0: 1, 1: i})
    assert (p * p.invert_q()).coeff(0) == 1 + i * i


# -- determinants ----------------------------------------------------------


def test_det_empty():
    assert det(PolyMatrix([])) == one


def test_det_2x2():
    m = [[one - t, t], [t, one + t]]
    assert det(m) == one - t * t * 2


def test_det_diagonal():
    ps = [L({1: 2, 3: -1}), L({0: 1, 4: 1}), L({-2: 3}), L({0: 1, 1: 1}), L({5: 1, 0: -1})]
    m = [[ps[i] if i == j else QLaurent.zero() for j in range(5)] for i in range(5)]
    prod = one
    for p in ps:
        prod = prod * p
    assert det(m) == prod


def _rand_matrix(rng, n, span=3, coef=3):
    def entry():
        return QLaurent({rng.randint(-span, span): mpq(rng.randint(-coef, coef), rng.randint(1, 3))
                         for _ in range(rng.randint(0, 3))})
    return [[entry() for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_det_matches_cofactor(n):
    rng = random.Random(n)
    for _ in range(5):
        m = _rand_matrix(rng, n)
        ref = _cofactor_det(m, n)
        assert det(m) == (ref if isinstance(ref, QLaurent) else QLaurent.const(mpq(ref)))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_packed_det_matches_bareiss(n):
    rng = random.Random(10 + n)
    m = _rand_matrix(rng, n)
    assert det(m) == _bareiss_det(m, n)


def test_packed_det_independent_of_row_order():
    rng = random.Random(3)
    m = _rand_matrix(rng, 6)
    swapped = [m[1], m[0]] + m[2:]
    assert det(swapped) == -det(m)


def test_kronecker_roundtrip():
    p = L({-3: 5, 0: mpq(-7, 2), 9: 1})
    kr = KroneckerRows([[[p]]])
    (v,), = kr.pack([[p]])
    assert kr.unpack(v) == p


def test_int_det():
    assert int_det([[mpz(2), mpz(1)], [mpz(1), mpz(3)]]) == 5
    assert int_det([[mpz(1), mpz(2)], [mpz(2), mpz(4)]]) == 0
    assert int_det([]) == 1


def test_int_det_leading():
    # corank 1: det(A0 + e A1) = e * (...)
    rng = random.Random(7)
    n = 5
    for _ in range(10):
        base = [[mpz(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n - 1)]
        combo = [rng.randint(-2, 2) for _ in range(n - 1)]
        A0 = base + [[sum(c * r[j] for c, r in zip(combo, base)) for j in range(n)]]
        A1 = [[mpz(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        k, c = int_det_leading(A0, A1)
        # linear coefficient by expanding each row in turn
        lin = sum(int_det([A1[i] if i == r else A0[i] for i in range(n)]) for r in range(n))
        assert k >= 1
        assert (c if k == 1 else 0) == lin


def test_int_det_leading_nonsingular():
    A0 = [[mpz(2), mpz(1)], [mpz(1), mpz(1)]]
    A1 = [[mpz(5), mpz(0)], [mpz(0), mpz(5)]]
    assert int_det_leading(A0, A1) == (0, 1)


def test_int_det_leading_corank_two():
    rng = random.Random(11)
    n = 5
    for _ in range(10):
        base = [[mpz(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n - 2)]
        combos = [[rng.randint(-2, 2) for _ in base] for _ in range(2)]
        extra = [[sum(c * r[j] for c, r in zip(cs, base)) for j in range(n)] for cs in combos]
        A0 = base + extra
        A1 = [[mpz(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        k, c = int_det_leading(A0, A1)
        quad = sum(int_det([A1[i] if i in (r, s) else A0[i] for i in range(n)])
                   for r in range(n) for s in range(r + 1, n))
        assert k >= 2
        assert (c if k == 2 else 0) == quad
