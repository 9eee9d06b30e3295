import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from qhex.exactalg import QLaurent, det
from qhex.qcalculus import hyperfactorial
from qhex.tilings import (
    MethodPreconditionError,
    RegionError,
    ScaleError,
    brute_force_Z,
    count_tilings,
    endpoints,
    enumerate_families,
    enumerate_tilings,
    lindstrom_Z,
    lindstrom_signed_sum,
    path_weight,
    region_grid,
    region_new,
    schlosser_det,
    selberg_Z,
    split_Z,
    step_weight,
    weight_matrix,
)

SAMPLE = region_new(2, 3, 2, 2, 3, 0)


def L(d):
    return QLaurent({e: mpq(c) for e, c in d.items()})


def _walk(start, moves):
    x, y = start
    pts = [(x, y)]
    for mv in moves:
        x, y = (x + 1, y) if mv == "1" else (x, y + 1)
        pts.append((x, y))
    return pts


# the drawn family: 1 = right step, 2 = up step
SAMPLE_FAMILY = [((0, 2), "222211"), ((1, 1), "112121"), ((2, 0), "111122"), ((1, 5), "11"), ((2, 4), "11")]


# -- regions ---------------------------------------------------------------


def test_sample_region_sides():
    assert (SAMPLE.A, SAMPLE.B, SAMPLE.C) == (4, 2, 1)
    assert SAMPLE.A + SAMPLE.B + SAMPLE.C == SAMPLE.a + SAMPLE.b + SAMPLE.c


def test_valid_example():
    region_new(2, 5, 2, 1, 1, 2)


@pytest.mark.parametrize("args,name", [
    ((1, 1, 1, 0, 1, 0), "parity-M"),
    ((1, 1, 1, 0, 0, 1), "parity-N"),
    ((1, 1, 1, 0, 4, 0), "bound-M"),
    ((1, 0, 0, 0, 0, 3), "bound-N"),
    ((0, 0, 2, 0, 2, 2), "bound-M+N"),
    ((-1, 1, 1, 0, 0, 0), "nonnegativity"),
])
def test_region_errors(args, name):
    with pytest.raises(RegionError) as err:
        region_new(*args)
    assert err.value.constraint == name


def test_grid_is_valid_and_complete():
    regions = list(region_grid(2, 1))
    assert len(set(r.as_tuple() for r in regions)) == len(regions)
    for r in regions:
        assert r.A + r.B + r.C == r.a + r.b + r.c


# -- endpoints and weights -------------------------------------------------


def test_endpoints_single_path():
    r = region_new(3, 1, 2, 0, 1, 1)
    assert endpoints(r) == ([(0, 0)], [(3, 2)])


def test_endpoints_sample_region():
    P, Q = endpoints(SAMPLE)
    assert P == [(0, 2), (1, 1), (2, 0), (1, 5), (2, 4)]
    assert Q == [(2, 6), (3, 5), (4, 4), (5, 3), (6, 2)]


def test_endpoints_empty():
    r = region_new(2, 0, 2, 0, 0, 0)
    assert endpoints(r) == ([], [])
    assert brute_force_Z(r) == QLaurent.one()


def test_step_weight():
    assert step_weight(3, 1, 5) == QLaurent.one()
    assert step_weight(4, 1, 5) == L({2: mpq(1, 2), -2: mpq(1, 2)})


def test_path_weight_small():
    z = 4
    assert path_weight((1, 1), (1, 1), z) == QLaurent.one()
    assert path_weight((1, 1), (2, 1), z) == step_weight(2, 1, z)
    assert path_weight((1, 1), (2, 2), z) == step_weight(2, 1, z) + step_weight(2, 2, z)
    assert path_weight((2, 2), (1, 3), z) == QLaurent.zero()


# -- Z by enumeration ------------------------------------------------------


def test_macmahon_unit_box():
    for M, N in [(0, 0), (2, 0), (0, 2), (-2, 0)]:
        try:
            r = region_new(1, 1, 1, 0, M, N)
        except RegionError:
            continue
        assert brute_force_Z(r).at_one() == 2


@pytest.mark.parametrize("region,count", [((2, 5, 2, 1, 1, 2), 544), ((2, 5, 2, 1, -1, -2), 1360)])
def test_example_counts(region, count):
    z, n = brute_force_Z(region_new(*region), with_count=True)
    assert n == count == z.at_one()


def test_scale_cap(monkeypatch):
    r = region_new(2, 5, 2, 1, 1, 2)
    with pytest.raises(ScaleError):
        brute_force_Z(r, max_tilings=100)
    monkeypatch.setenv("QHEX_MAX_TILINGS", "10")
    with pytest.raises(ScaleError):
        brute_force_Z(r)


def test_count_matches_enumeration():
    for r in [SAMPLE, region_new(1, 2, 1, 1, 1, 0), region_new(2, 1, 1, 2, 0, -1)]:
        tilings = list(enumerate_tilings(r))
        assert len(tilings) == count_tilings(r)
        total = QLaurent.zero()
        for _, til in tilings:
            total = total + til.weight()
        assert total == brute_force_Z(r)


def test_sample_family_is_enumerated():
    target = [_walk(p, mv) for p, mv in SAMPLE_FAMILY]
    fams = [f.paths for f in enumerate_families(SAMPLE)]
    assert target in [[list(p) for p in fam] for fam in fams]


def test_sample_family_heights():
    zsh = SAMPLE.zsh
    hs = set()
    for p, mv in SAMPLE_FAMILY:
        pts = _walk(p, mv)
        for (x0, _), (x1, y1) in zip(pts, pts[1:]):
            if x1 == x0 + 1:
                hs.add(Fraction(x1 + 2 * y1 - zsh, 2))
    assert {2, Fraction(3, 2), 1, Fraction(1, 2)} <= hs


def test_enumerate_limits():
    assert list(enumerate_tilings(SAMPLE, 0)) == []
    assert len(list(enumerate_tilings(region_new(1, 1, 1, 0, 0, 0)))) == 2
    first = [t.heights() for _, t in enumerate_tilings(SAMPLE, 3)]
    again = [t.heights() for _, t in enumerate_tilings(SAMPLE, 3)]
    assert first == again


# -- determinant methods ---------------------------------------------------


def test_lindstrom_needs_even_m():
    with pytest.raises(MethodPreconditionError):
        lindstrom_Z(region_new(1, 1, 1, 1, 0, 0))
    with pytest.raises(MethodPreconditionError):
        selberg_Z(region_new(1, 1, 1, 1, 0, 0))


@pytest.mark.parametrize("region", [(1, 1, 1, 0, 0, 0), (1, 1, 1, 2, 0, 0), (2, 2, 2, 2, 0, 0),
                                    (2, 3, 2, 2, 3, 0), (0, 2, 1, 2, -1, 1)])
def test_even_methods_agree(region):
    r = region_new(*region)
    z = brute_force_Z(r)
    assert lindstrom_Z(r) == z
    assert selberg_Z(r) == z
    assert split_Z(r) == z


@pytest.mark.parametrize("region", [(2, 5, 2, 1, 1, 2), (1, 2, 1, 1, 1, 0), (0, 1, 3, 1, -4, 3),
                                    (3, 0, 1, 3, 1, -2)])
def test_split_odd(region):
    r = region_new(*region)
    assert split_Z(r) == brute_force_Z(r)


def test_m0_split_is_lindstrom():
    r = region_new(2, 2, 1, 0, 1, 1)
    assert split_Z(r) == lindstrom_Z(r)


def test_lindstrom_literal():
    # the determinant against the signed sum over non-intersecting families
    rng = random.Random(4)
    for r in region_grid(2, 2):
        if r.b + r.m > 3 or r.m % 2 or rng.random() < 0.6:
            continue
        P, Q = endpoints(r)
        assert lindstrom_Z(r) == lindstrom_signed_sum(P, Q, r.zsh)


def test_lindstrom_literal_crossing_terms():
    # endpoints where a transposed pairing also has disjoint families
    P, Q = [(0, 1), (1, 0)], [(2, 3), (3, 2)]
    assert det(weight_matrix(P, Q, 3)) == lindstrom_signed_sum(P, Q, 3)
    P, Q = [(0, 0), (1, 1)], [(3, 3), (2, 4)]
    assert det(weight_matrix(P, Q, 2)) == lindstrom_signed_sum(P, Q, 2)


@pytest.mark.parametrize("m,ls", [(1, (0,)), (1, (2,)), (2, (0, 1)), (2, (1, 3)), (3, (0, 1, 3))])
def test_schlosser(m, ls):
    d, closed = schlosser_det(0, 0, 3, 5, m, ls, 4)
    assert d == closed.to_laurent()


def test_schlosser_randomized():
    rng = random.Random(9)
    for _ in range(12):
        m = rng.randint(1, 3)
        ls = sorted(rng.sample(range(5), m))
        x1, y1 = rng.randint(-2, 2), rng.randint(-2, 2)
        x2, y2 = x1 + rng.randint(0, 3), y1 + m + rng.randint(2, 5)
        zsh = rng.randint(-3, 6)
        d, closed = schlosser_det(x1, y1, x2, y2, m, ls, zsh)
        assert d == closed.to_laurent()
        assert d.invert_q() == d


def test_z_symmetric():
    for r in [SAMPLE, region_new(2, 5, 2, 1, 1, 2)]:
        z = brute_force_Z(r)
        assert z.invert_q() == z and z.exponents_divisible_by(2)


def test_macmahon_count_small():
    a, b, c = 2, 2, 1
    H = hyperfactorial
    want = H(a) * H(b) * H(c) * H(a + b + c) // (H(a + b) * H(a + c) * H(b + c))
    assert brute_force_Z(region_new(a, b, c, 0, 1, -1)).at_one() == want


def test_coefficients_exact():
    r = region_new(2, 3, 2, 2, 3, 0)
    for fn in (brute_force_Z, lindstrom_Z, split_Z, selberg_Z):
        assert all(type(c) is type(mpq(1)) for _, c in fn(r).items())
