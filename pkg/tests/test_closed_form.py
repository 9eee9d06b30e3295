from fractions import Fraction

import pytest
from gmpy2 import mpq

from qhex.closed_form import (
    _pole_arg,
    apply_prefactor,
    dsdc_check,
    fpc_check,
    prefactor_lines,
    prefactor_parts,
    q20_closed,
    q_det,
    q_entry,
    qdi_check,
    symmetry_check,
    symmetry_ratio,
    theorem_Z,
    two_exponent,
)
from qhex.exactalg import Mono, QLaurent
from qhex.qcalculus import QDomainError, QField, hyperfactorial, ratvalue
from qhex.tilings import brute_force_Z, region_grid, region_new

T0 = mpq(3, 5)
AL, BE, GA = Mono(mpq(2, 7), 0), Mono(mpq(5, 11), 0), Mono(mpq(4, 3), 0)


def qpoly(coeffs):
    """Polynomial in q from a list of coefficients, constant first."""
    return QLaurent({4 * i: mpq(c) for i, c in enumerate(coeffs) if c})


def one_plus(k, sign=1):
    return qpoly([1] + [0] * (k - 1) + [sign])


def power(p, k):
    out = QLaurent.one()
    for _ in range(k):
        out = out * p
    return out


F = qpoly([1, 1, 2, 3, 3, 3, 2, 1, 1])


# -- the determinant -------------------------------------------------------


def test_empty_determinant():
    Q = QField(t0=T0)
    assert q_det(0, 0, 3, AL, BE, GA, Q) == QLaurent.one()


def test_entry_index_range():
    with pytest.raises(IndexError):
        q_entry(1, 1, 2, AL, BE, GA, 3, 1, QField(t0=T0))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_q20_closed(n):
    Q = QField(t0=T0)
    d = q_det(2, 0, n, AL, BE, GA, Q).constant_value()
    assert d == ratvalue(q20_closed(n, AL, BE, GA, Q))


def test_q20_closed_odd_only():
    with pytest.raises(ValueError):
        q20_closed(2, AL, BE, GA)


@pytest.mark.parametrize("M,N,n", [(0, 0, 1), (1, 0, 2), (1, 1, 1), (2, 1, 3), (3, 2, 2), (3, 3, 3)])
def test_qdi(M, N, n):
    assert qdi_check(M, N, n, AL, BE, GA)


def test_qdi_other_parameters():
    assert qdi_check(2, 2, 1, Mono(mpq(-3, 2), 0), Mono(mpq(1, 9), 0), Mono(mpq(7, 5), 0),
                     t0=mpq(5, 4))


# -- the constant ----------------------------------------------------------


def test_two_exponent_integral():
    for r in region_grid(4, 4):
        assert two_exponent(r).denominator == 1


def test_two_exponent_example():
    assert two_exponent(region_new(2, 5, 2, 1, 1, 2)) == 13


def test_prefactor_lines_labelled():
    lines = prefactor_lines(region_new(2, 5, 2, 1, 1, 2))
    assert len(lines) == 12
    assert len({label for label, _ in lines}) == 12


def test_prefactor_pole_raises():
    r = region_new(0, 0, 2, 1, -2, 2)
    assert _pole_arg(r) == -1
    with pytest.raises(QDomainError) as err:
        prefactor_lines(r)
    assert "prefactor line" in str(err.value)
    assert prefactor_parts(r)[1] == 1


def test_half_integer_continuation_is_regular():
    r = region_new(0, 0, 3, 0, -3, 3)
    assert _pole_arg(r) == Fraction(-5, 2)
    assert prefactor_parts(r)[1] == 0


# -- Z ---------------------------------------------------------------------


def test_theorem_z_first_example():
    r = region_new(2, 5, 2, 1, 1, 2)
    num = power(one_plus(1), 4) * power(one_plus(2), 5) * power(one_plus(3), 3) \
        * power(one_plus(4), 5) * one_plus(5) * F
    want = num * QLaurent.monomial(mpq(1, 2 ** 13), -4 * 28)
    z = theorem_Z(r)
    assert z == want
    assert z.at_one() == 544


def test_theorem_z_second_example():
    r = region_new(2, 5, 2, 1, -1, -2)
    num = power(one_plus(1), 3) * power(one_plus(2), 4) * power(one_plus(3), 2) \
        * power(one_plus(4), 4) * one_plus(10, -1).div_binomial(mpq(1), 4) * F
    want = num * QLaurent.monomial(mpq(1, 2 ** 10), -4 * 25)
    z = theorem_Z(r)
    assert z == want
    assert z.at_one() == 1360


def test_theorem_z_unit_box():
    assert theorem_Z(region_new(1, 1, 1, 0, 0, 0)).at_one() == 2


@pytest.mark.parametrize("a,b,c", [(1, 2, 1), (2, 2, 2), (3, 1, 2)])
def test_macmahon(a, b, c):
    H = hyperfactorial
    want = H(a) * H(b) * H(c) * H(a + b + c) // (H(a + b) * H(a + c) * H(b + c))
    r = region_new(a, b, c, 0, (b + c) % 2, (a + c) % 2)
    assert theorem_Z(r).at_one() == want


def _continued(integer):
    for r in region_grid(3, 3):
        x = _pole_arg(r)
        if (x.denominator == 1) == integer and x < -Fraction(1, 2):
            yield r


def test_pole_regions():
    # a sample of every pole order, checked against enumeration
    seen = {}
    for r in _continued(True):
        order = prefactor_parts(r)[1]
        assert order == -_pole_arg(r)
        seen.setdefault(order, []).append(r)
    assert set(seen) == {1, 2}
    for rs in seen.values():
        for r in rs[::7]:
            assert theorem_Z(r) == brute_force_Z(r)


def test_half_integer_regions():
    for r in list(_continued(False))[::9]:
        assert theorem_Z(r) == brute_force_Z(r)


def test_theorem_z_symmetric_even_exponents():
    for r in [region_new(2, 3, 2, 2, 3, 0), region_new(1, 2, 1, 1, 1, 0)]:
        z = theorem_Z(r)
        assert z.invert_q() == z and z.exponents_divisible_by(2)


# -- the M, N -> -M, -N symmetry -------------------------------------------


def test_symmetry_ratio_trivial():
    assert symmetry_ratio(region_new(2, 2, 2, 1, 0, 0)).to_laurent() == QLaurent.one()


def test_symmetry_ratio_example():
    r = region_new(2, 5, 2, 1, 1, 2)
    z = apply_prefactor(brute_force_Z(r.mirrored()), symmetry_ratio(r))
    assert z.at_one() == 544


@pytest.mark.parametrize("region", [(2, 5, 2, 1, 1, 2), (1, 2, 1, 1, 1, 0), (2, 2, 1, 2, 1, -1)])
def test_symmetry_check(region):
    assert symmetry_check(region_new(*region))


# -- chain identities -------------------------------------------------------


@pytest.mark.parametrize("m,n,M,N", [(0, 1, 1, 0), (2, 1, 1, 1), (2, 2, 2, 1), (0, 2, 0, 2)])
def test_dsdc(m, n, M, N):
    assert dsdc_check(m, n, M, N)


@pytest.mark.parametrize("m,n,M,N", [(0, 1, 1, 0), (2, 1, -1, 1), (2, 2, 2, -2), (0, 2, -2, 0)])
def test_fpc(m, n, M, N):
    assert fpc_check(m, n, M, N)
