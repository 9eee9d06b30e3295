"""Verification suites shared by the command line and the acceptance tests.

Each suite is a generator of :class:`Check` records, one per identity and
grid, in a fixed order.  Random choices are drawn from a seeded generator so
that a run is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from . import askey_wilson as aw
from .closed_form import dsdc_check, fpc_check, qdi_check, symmetry_check, theorem_Z
from .exactalg import Mono
from .qcalculus import QField, hqd_check, num, phl_check, phlb_check, qhl_check, sears_multi_check
from .tilings import (
    brute_force_Z,
    lindstrom_Z,
    region_grid,
    region_new,
    selberg_Z,
    split_Z,
)


@dataclass
class Check:
    name: str
    anchor: str
    ok: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status}  {self.name}: {self.anchor}{tail}"


def _grid_check(name, anchor, cases, fn):
    bad = [c for c in cases if not fn(*c)]
    detail = f"{len(cases)} cases" if not bad else f"{len(bad)}/{len(cases)} failed, first {bad[0]}"
    return Check(name, anchor, not bad, detail)


# --------------------------------------------------------------------------
# appendix: hyperfactorial identities


def appendix_suite(max_size=None, seed=0):
    """Hyperfactorial identities, symbolic in q."""
    halves = [Fraction(k, 2) for k in range(-1, 13)]
    yield _grid_check("qhl", "H over q against H over q^2, m <= 12",
                      [(m,) for m in range(13)], qhl_check)
    yield _grid_check("phl", "Pochhammer products as H-ratios, k, m <= 6, 2l in -1..12",
                      [(k, l, m) for k in range(7) for m in range(7) for l in halves], phl_check)
    yield _grid_check("phlb", "products of (-q^{l+j};q)_m, k, m <= 5, |l| <= 6",
                      [(k, l, m) for k in range(6) for m in range(6) for l in range(-6, 7)],
                      phlb_check)
    yield _grid_check("hqd", "H~(a + m/2) through H~(m/2), a <= 4, m <= 8",
                      [(a, m) for a in range(5) for m in range(9)], hqd_check)


# --------------------------------------------------------------------------
# Askey-Wilson polynomials


AW_POINT = aw.AWParams(mpq(1, 2), mpq(2, 7), mpq(3, 11), mpq(5, 13), mpq(3, 5))


def aw_suite(max_size=None, seed=0):
    """Monic Askey-Wilson polynomials, ksd determinant, Cauchy-Binet."""
    rng = random.Random(seed)
    p = AW_POINT
    yield _grid_check("aw-monic", "P_n is monic of degree n, n <= 6",
                      [(n,) for n in range(7)], lambda n: aw.is_monic_of_degree(n, p))
    xs = [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(20)]
    yield _grid_check("aw-symmetry", "P_n symmetric in (a,b,c,d), n <= 3, 20 random points",
                      [(n,) for n in range(4)],
                      lambda n: aw.symmetric_under_permutations(n, p, xs))

    def ksd(m, ls):
        lhs, rhs = aw.ksd_det(mpq(2, 9), mpq(5, 7), m, ls, mpq(3, 5))
        return lhs == rhs

    cases = [(1, (3,)), (2, (0, 1))]
    for m in range(1, 4):
        for _ in range(5):
            cases.append((m, tuple(sorted(rng.sample(range(6), m)))))
    yield _grid_check("ksd", "det((a q^{j-1}, b q^{m-j};q)_{l_k}) product formula", cases, ksd)

    def cb(_):
        A = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(3)]
        B = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(6)]
        lhs, rhs = aw.cauchy_binet_sides([[mpq(x) for x in r] for r in A],
                                         [[mpq(x) for x in r] for r in B])
        return lhs == rhs

    yield _grid_check("cauchy-binet", "random 3x6 integer matrices",
                      [(i,) for i in range(10)], cb)


# --------------------------------------------------------------------------
# the identity chain


SEARS_Q = QField(q=mpq(3, 5))


def _sears(m, n):
    Q = SEARS_Q
    a, b, c = num(mpq(2, 3)), num(mpq(3, 7)), num(mpq(5, 11))
    d, e = num(mpq(7, 13)), num(mpq(11, 17))
    f = Q.qpow(1 - n) * a * b * c / (d * e)
    return sears_multi_check(m, n, a, b, c, d, e, f, Q)


def chain_suite(max_size=None, seed=0):
    """Determinant evaluations linking the Selberg sum to Q^{MNn}."""
    p, xi = aw.DSL_POINT
    yield _grid_check("dsl", "det(P_{n+j-1}(x_k))/Delta(x) as a multiple 4phi3, m, n <= 3",
                      [(m, n) for m in range(4) for n in range(4)],
                      lambda m, n: aw.dsl_check(m, n, p, xi))
    yield _grid_check("qdt", "quadratic transformation, m in {0,2,4}, n, M, N <= 2",
                      [(m, n, M, N) for m in (0, 2, 4) for n in range(3)
                       for M in range(3) for N in range(3)],
                      lambda m, n, M, N: aw.qdt_check(m, n, M, N, *aw.QDT_POINT))
    yield _grid_check("sears", "multiple Sears transformation, m <= 2, n <= 2",
                      [(m, n) for m in range(3) for n in range(3)], _sears)
    yield _grid_check("dsdc", "multiple 4phi3 as Q^{MNn}, m in {0,2}, n, M, N <= 2",
                      [(m, n, M, N) for m in (0, 2) for n in range(3)
                       for M in range(3) for N in range(3)], dsdc_check)
    yield _grid_check("fpc", "signed-(M,N) form, m in {0,2}, n <= 2, |M|, |N| <= 2",
                      [(m, n, M, N) for m in (0, 2) for n in range(3)
                       for M in range(-2, 3) for N in range(-2, 3)], fpc_check)
    t0 = mpq(3, 5)
    yield _grid_check("qdi", "Q^{MNn} under (alpha, beta, gamma, q) -> inverses, M, N, n <= 2",
                      [(M, N, n) for M in range(3) for N in range(3) for n in range(3)],
                      lambda M, N, n: qdi_check(M, N, n, Mono(mpq(2, 7), 0), Mono(mpq(5, 11), 0),
                                                Mono(mpq(4, 3), 0), t0))


# --------------------------------------------------------------------------
# cross-method agreement on Z(q)


def cross_results(max_size=2, max_m=None):
    """Yield ``(region, {method: Z})`` over the grid; odd m skips the determinant methods."""
    max_m = max_size if max_m is None else max_m
    for r in region_grid(max_size, max_m):
        out = {"brute": brute_force_Z(r), "split": split_Z(r), "closed": theorem_Z(r)}
        if r.m % 2 == 0:
            out["lindstrom"] = lindstrom_Z(r)
            out["selberg"] = selberg_Z(r)
        yield r, out


def cross_suite(max_size=2, seed=0):
    """Five evaluations of Z(q) agree on every region of the grid."""
    max_size = 2 if max_size is None else max_size
    n = 0
    bad = []
    sym_bad = []
    zs = {}
    for r, res in cross_results(max_size):
        n += 1
        ref = res["brute"]
        if any(z != ref for z in res.values()):
            bad.append(r.as_tuple())
        if ref.invert_q() != ref or not ref.exponents_divisible_by(2):
            sym_bad.append(r.as_tuple())
        zs[r.as_tuple()] = ref
    detail = f"{n} regions" if not bad else f"{len(bad)}/{n} disagree, first {bad[0]}"
    yield Check("cross", f"brute = split = closed (+ lindstrom, selberg for even m), "
                         f"sides and m <= {max_size}", not bad, detail)
    detail = f"{n} regions" if not sym_bad else f"first failure {sym_bad[0]}"
    yield Check("invert-q", "Z(1/q) = Z(q), even t-exponents", not sym_bad, detail)
    mir_bad = []
    for key, z in zs.items():
        a, b, c, m, M, N = key
        r = region_new(*key)
        if not symmetry_check(r, z, zs[(a, b, c, m, -M, -N)]):
            mir_bad.append(key)
    detail = f"{len(zs)} regions" if not mir_bad else f"first failure {mir_bad[0]}"
    yield Check("mirror", "Z_{M,N} / Z_{-M,-N} as an H-ratio", not mir_bad, detail)


SUITES = {
    "appendix": appendix_suite,
    "aw": aw_suite,
    "chain": chain_suite,
    "cross": cross_suite,
}


def run(name, max_size=None, seed=0):
    names = list(SUITES) if name == "all" else [name]
    for nm in names:
        yield from SUITES[nm](max_size=max_size, seed=seed)
