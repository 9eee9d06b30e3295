"""Monic Askey-Wilson polynomials and determinant identities built on them.

Everything is evaluated exactly at numeric points: parameters, ``q`` and the
evaluation points are rationals (``mpq``) or Gaussian rationals (``GRat``).
Constant :class:`~qhex.exactalg.Mono` values from a numeric
:class:`~qhex.qcalculus.QField` are accepted too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial

from gmpy2 import mpq

from .exactalg import GRat, Mono, cpow, det_value


def num(x):
    """Coerce to an exact number (``mpq`` or ``GRat``)."""
    if isinstance(x, GRat):
        return x
    if isinstance(x, Mono):
        if x.texp or x.uexp:
            raise ValueError(f"{x!r} is not a numeric constant")
        return num(x.coef)
    return mpq(x)


def poch(x, q, n):
    """``(x;q)_n`` for ``n >= 0``."""
    out = mpq(1)
    for i in range(n):
        out = out * (1 - x * cpow(q, i))
    return out


def pochs(xs, q, n):
    out = mpq(1)
    for x in xs:
        out = out * poch(x, q, n)
    return out


def vandermonde(xs):
    """``prod_{i<j} (x_j - x_i)``."""
    out = mpq(1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out = out * (xs[j] - xs[i])
    return out


def _is_zero(x):
    return not isinstance(x, GRat) and x == 0


@dataclass(frozen=True)
class AWParams:
    """Parameters ``a, b, c, d`` and base ``q`` of ``P_n(x; a, b, c, d; q)``."""

    a: object
    b: object
    c: object
    d: object
    q: object

    def __post_init__(self):
        for f in ("a", "b", "c", "d", "q"):
            object.__setattr__(self, f, num(getattr(self, f)))

    def permuted(self, order):
        vals = (self.a, self.b, self.c, self.d)
        return AWParams(*(vals[i] for i in order), self.q)


def _aw(n, p, pair):
    # pair(k) = (a xi, a / xi; q)_k
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = a * b * c * d
    norm = 2 ** n * cpow(a, n) * poch(abcd * cpow(q, n - 1), q, n)
    if _is_zero(norm):
        raise ZeroDivisionError(f"normalization of P_{n} vanishes")
    total = mpq(0)
    for k in range(n + 1):
        den = pochs([q, a * b, a * c, a * d], q, k)
        if _is_zero(den):
            raise ZeroDivisionError(f"singular term k={k} in P_{n}")
        top = pochs([cpow(q, -n), abcd * cpow(q, n - 1)], q, k) * pair(k)
        total = total + top / den * cpow(q, k)
    return pochs([a * b, a * c, a * d], q, n) / norm * total


def aw_eval(n, p, xi):
    """Monic ``P_n(x)`` at ``x = (xi + 1/xi) / 2``."""
    xi = num(xi)
    a, q = p.a, p.q
    return _aw(n, p, lambda k: poch(a * xi, q, k) * poch(a / xi, q, k))


def aw_eval_x(n, p, x):
    """Monic ``P_n(x)`` at a point given directly by ``x``."""
    x = num(x)
    a, q = p.a, p.q

    def pair(k):
        out = mpq(1)
        for j in range(k):
            qj = cpow(q, j)
            out = out * (1 - 2 * a * x * qj + a * a * qj * qj)
        return out

    return _aw(n, p, pair)


def finite_differences(values):
    """Leading differences ``Delta^k f(0)`` of equally spaced values."""
    out = []
    row = list(values)
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def is_monic_of_degree(n, p):
    """Check at ``x = 0..n+1``: ``Delta^n = n!`` and ``Delta^{n+1} = 0``."""
    diffs = finite_differences([aw_eval_x(n, p, x) for x in range(n + 2)])
    return diffs[n] == factorial(n) and _is_zero(diffs[n + 1])


def symmetric_under_permutations(n, p, xs):
    """``P_n`` agrees at each ``x`` for all 24 orderings of ``(a, b, c, d)``."""
    for x in xs:
        ref = aw_eval_x(n, p, x)
        for order in permutations(range(4)):
            if aw_eval_x(n, p.permuted(order), x) != ref:
                return False
    return True


# --------------------------------------------------------------------------
# Cauchy-Binet and the ksd determinant


def cauchy_binet_sides(A, B):
    """Both sides of Cauchy-Binet for an ``m x (N+1)`` matrix A and ``(N+1) x m`` matrix B."""
    m, width = len(A), len(B)
    AB = [[sum((A[j][l] * B[l][k] for l in range(width)), mpq(0)) for k in range(m)]
          for j in range(m)]
    lhs = det_value(AB)
    rhs = mpq(0)
    for ls in combinations(range(width), m):
        dA = det_value([[A[j][l] for l in ls] for j in range(m)])
        dB = det_value([[B[l][k] for l in ls] for k in range(m)])
        rhs = rhs + dA * dB
    return lhs, rhs


def ksd_det(a, b, m, ls, q):
    """``(det, closed)`` for ``det((a q^{j-1}, b q^{m-j}; q)_{l_k})``."""
    a, b, q = num(a), num(b), num(q)
    ls = list(ls)
    if len(ls) != m or any(x >= y for x, y in zip(ls, ls[1:])) or (ls and ls[0] < 0):
        raise ValueError("need 0 <= l_1 < ... < l_m")
    mat = [[poch(a * cpow(q, j), q, l) * poch(b * cpow(q, m - 1 - j), q, l) for l in ls]
           for j in range(m)]
    lhs = det_value(mat)
    rhs = cpow(q, comb(m, 3)) * cpow(b, comb(m, 2))
    for j in range(1, m + 1):
        rhs = rhs * pochs([a, b], q, ls[j - 1]) * poch(cpow(q, j - m) * a / b, q, j - 1)
        rhs = rhs / pochs([a, b], q, j - 1)
    rhs = rhs * vandermonde([cpow(q, l) for l in ls])
    return lhs, rhs


# --------------------------------------------------------------------------
# determinants of Askey-Wilson polynomials


def multi_phi43_value(m, upper, lower, q, cap):
    """Multiple ``4phi3`` with weight ``Delta(q^k)^2`` over ``0 <= k_1 < ... < k_m <= cap``."""
    single = []
    for k in range(cap + 1):
        den = pochs([q] + list(lower), q, k)
        if _is_zero(den):
            raise ZeroDivisionError(f"singular term k={k}")
        single.append(pochs(upper, q, k) / den * cpow(q, k))
    total = mpq(0)
    for ks in combinations(range(cap + 1), m):
        term = vandermonde([cpow(q, k) for k in ks]) ** 2
        for k in ks:
            term = term * single[k]
        total = total + term
    return total


def dsl_sides(m, n, p, xi):
    """Both sides of the determinant evaluation for ``det(P_{n+j-1}(x_k)) / Delta(x)``."""
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    xi = num(xi)
    xs = [(xi * cpow(q, k) + cpow(q, -k) / xi) / 2 for k in range(m)]
    dx = vandermonde(xs)
    if _is_zero(dx):
        raise ZeroDivisionError("the points x_k are not distinct")
    lhs = det_value([[aw_eval(n + j, p, xi * cpow(q, k)) for k in range(m)]
                     for j in range(m)]) / dx
    abcd = a * b * c * d
    rhs = 1 / (cpow(q, 2 * comb(m, 3) + (n + 1) * comb(m, 2)) * cpow(2 * a, m * n))
    for j in range(1, m + 1):
        top = pochs([a * b, a * c, a * d], q, n + j - 1)
        bot = poch(abcd * cpow(q, n - 1), q, n + j - 1)
        bot = bot * pochs([q, cpow(q, 1 - m - n), a * xi, a * cpow(q, 1 - m) / xi], q, j - 1)
        if _is_zero(bot):
            raise ZeroDivisionError("singular prefactor; choose another point")
        rhs = rhs * top / bot
    upper = [cpow(q, 1 - m - n), abcd * cpow(q, n - 1), a * xi, a * cpow(q, 1 - m) / xi]
    rhs = rhs * multi_phi43_value(m, upper, [a * b, a * c, a * d], q, m + n - 1)
    return lhs, rhs


def dsl_check(m, n, p, xi):
    lhs, rhs = dsl_sides(m, n, p, xi)
    return lhs == rhs


# default generic point for dsl_check
DSL_POINT = (AWParams(mpq(1, 2), mpq(2, 7), mpq(3, 11), mpq(5, 13), mpq(3, 5)), mpq(7, 4))


def _qdt_q(n, m, a, b, q, x):
    # even/odd split polynomials in base q^2
    q2 = q * q
    y = 2 * x * x - 1
    if n % 2 == 0:
        p = AWParams(-1, -cpow(q, m + 1), a * a, b * b, q2)
        return aw_eval_x(n // 2, p, y) / mpq(2) ** (n // 2)
    p = AWParams(-q2, -cpow(q, m + 1), a * a, b * b, q2)
    return x * aw_eval_x((n - 1) // 2, p, y) / mpq(2) ** ((n - 1) // 2)


def qdt_constant(m, n, M, N, a, b, q):
    f = lambda j: 2 * (j // 2)
    a2, b2, ab = a * a, b * b, a * b
    q2 = q * q
    h = m // 2
    out = cpow(mpq(2) ** (M + N - m) * cpow(q, comb(M, 2) + comb(N, 2) - m * m // 4)
               * cpow(a, M) * cpow(b, N), n)
    for j in range(1, n + 1):
        top = pochs([cpow(q, f(j) + 1), -a2 * cpow(q, f(j - 1) + 1), -b2 * cpow(q, f(j - 1) + 1),
                     a2 * b2 * cpow(q, f(j) - 1)], q2, h)
        top = top * pochs([a2 * b2 * cpow(q, 2 * j - 3), a2 * b2 * cpow(q, 2 * j - 2)], q, M + N)
        bot = pochs([a2 * b2 * cpow(q, 2 * j - 3), a2 * b2 * cpow(q, 2 * j - 1)], q2, h)
        bot = bot * pochs([ab * cpow(q, j - 1), a2 * b2 * cpow(q, j - 2)], q, M + N)
        bot = bot * pochs([-a2 * cpow(q, j - 1), -ab * cpow(q, j - 1)], q, M)
        bot = bot * pochs([-b2 * cpow(q, j - 1), -ab * cpow(q, j - 1)], q, N)
        if _is_zero(bot):
            raise ZeroDivisionError("singular constant; choose another point")
        out = out * top / bot
    return out


def qdt_sides(m, n, M, N, a, b, root_q):
    """Both sides of the quadratic transformation, with ``q = root_q**2``."""
    if m % 2:
        raise ValueError("m must be even")
    a, b, s = num(a), num(b), num(root_q)
    q = s * s
    I = GRat(0, 1)
    ys = []
    for k in range(1, m + 1):
        eta = I * cpow(s, 2 * k - m - 1)
        ys.append((eta + 1 / eta) / 2)
    zs = [(z + 1 / z) / 2 for z in
          [a * cpow(q, k) for k in range(M)] + [b * cpow(q, k) for k in range(N)]]
    dy, dz = vandermonde(ys), vandermonde(zs)
    if _is_zero(dy) or _is_zero(dz):
        raise ZeroDivisionError("degenerate points")
    p = AWParams(a * cpow(q, M), -a, b * cpow(q, N), -b, q)
    lhs = det_value([[aw_eval_x(n + j, p, y) for y in ys] for j in range(m)]) / dy
    rhs = det_value([[_qdt_q(n + j, m, a, b, q, z) for z in zs] for j in range(M + N)]) / dz
    return lhs, qdt_constant(m, n, M, N, a, b, q) * rhs


def qdt_check(m, n, M, N, a, b, root_q):
    lhs, rhs = qdt_sides(m, n, M, N, a, b, root_q)
    return lhs == rhs


# default generic point for qdt_check: a, b, q^{1/2}
QDT_POINT = (mpq(2, 7), mpq(3, 11), mpq(3, 5))
