"""The determinant Q^{MNn}, the constant C and the closed form of Z(q).

Everything here is written against a :class:`~qhex.qcalculus.QField`, so the
same formulas give exact Laurent polynomials (symbolic field) or exact
numbers at a generic point (numeric field).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, floor

from gmpy2 import mpq

from .exactalg import (
    FactorProduct,
    InexactDivisionError,
    Mono,
    QLaurent,
    RatFunc,
    KroneckerRows,
    SingularTermError,
    cpow,
    det,
    int_det_leading,
)
from .qcalculus import (
    SYMBOLIC,
    QDomainError,
    QField,
    h_eps,
    h_minus,
    h_q,
    h_q_cont,
    hprod,
    mono_pow,
    multi_phi43,
    phi43_terms,
    poch,
    ratvalue,
    pochs,
    sum_terms,
)
from .tilings import Region

HALF = Fraction(1, 2)


def sgn(k):
    return 1 if k >= 0 else -1


def fl(x):
    """Floor bracket ``[x]``."""
    return floor(Fraction(x))


# --------------------------------------------------------------------------
# matrix entries


def _tag(x):
    """Put the perturbation variable on a parameter."""
    return Mono(x.coef, x.texp, x.uexp + 1)


def _entry_terms(n, al, be, ga, j, k, Q):
    """Folded summands of the entry in column ``k`` (first block)."""
    q = Q.q
    q2 = Q.qpow(2)
    a2, b2, g2 = al ** 2, be ** 2, ga ** 2
    if (n + j) % 2:
        h = (n + j - 1) // 2
        pre = pochs([a2, a2 * g2], q2, h) * poch(a2 * b2, q2, k - 1)
        pre = pre / (Q.qpow(Fraction((n + j - 1) * (n + j - 3), 4) + comb(k - 1, 2))
                     * al ** (n + j + k - 2) * be ** (k - 1) * mono_pow(ga, Fraction(n + j - 1, 2)))
        upper = [Q.qpow(1 - j - n), a2 * b2 * g2 * Q.qpow(n + j - 3), al ** 4 * Q.qpow(2 * k - 2),
                 Q.qpow(2 - 2 * k)]
        lower = [a2, a2 * b2, a2 * g2]
    else:
        h = (n + j - 2) // 2
        lead = FactorProduct.from_mono(al * Q.qpow(k - 1)).times_binomial(al ** -2 * Q.qpow(2 - 2 * k))
        pre = lead * pochs([a2 * q2, a2 * g2], q2, h) * poch(a2 * b2, q2, k - 1)
        pre = pre / (Q.qpow(Fraction((n + j - 2) ** 2, 4) + comb(k - 1, 2))
                     * al ** (n + j + k - 3) * be ** (k - 1) * mono_pow(ga, Fraction(n + j - 2, 2)))
        upper = [Q.qpow(2 - j - n), a2 * b2 * g2 * Q.qpow(n + j - 2), al ** 4 * Q.qpow(2 * k - 2),
                 Q.qpow(2 - 2 * k)]
        lower = [a2 * q2, a2 * b2, a2 * g2]
    cap = min(h, k - 1)
    return list(phi43_terms(upper, lower, q2, q2, cap, pre))


def _entry(n, al, be, ga, j, k, Q):
    try:
        return sum_terms(_entry_terms(n, _tag(al), be, ga, j, k, Q), "Q entry")
    except SingularTermError:
        return sum_terms(_entry_terms(n, al, _tag(be), ga, j, k, Q), "Q entry")


def q_entry(M, N, n, al, be, ga, j, k, Q=SYMBOLIC):
    """Entry ``(j, k)`` of the ``(M+N) x (M+N)`` matrix, as a RatFunc."""
    if not (1 <= j <= M + N and 1 <= k <= M + N):
        raise IndexError("entry index out of range")
    if k <= M:
        return _entry(n, al, be, ga, j, k, Q)
    return _entry(n, be, al, ga, j, k - M, Q)


def q_matrix(M, N, n, al, be, ga, Q=SYMBOLIC):
    rows = []
    for j in range(1, M + N + 1):
        row = []
        for k in range(1, M + N + 1):
            e = q_entry(M, N, n, al, be, ga, j, k, Q)
            try:
                row.append(e.to_laurent())
            except InexactDivisionError:
                raise ArithmeticError(f"entry ({j},{k}) is not a Laurent polynomial") from None
        rows.append(row)
    return rows


def q_det(M, N, n, al, be, ga, Q=SYMBOLIC):
    """The determinant ``Q^{MNn}(alpha, beta, gamma; q)`` as a QLaurent."""
    return det(q_matrix(M, N, n, al, be, ga, Q))


def q20_closed(n, al, be, ga, Q=SYMBOLIC):
    """Simplified product form of ``Q^{2,0,n}`` for odd ``n`` (as a RatFunc)."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    q, q2 = Q.q, Q.qpow(2)
    a2, b2, g2 = al ** 2, be ** 2, ga ** 2
    h = (n - 1) // 2
    pre = poch(a2, q2, h + 1) * pochs([a2 * q2, a2 * g2, a2 * g2 * q2], q2, h)
    pre = pre.times_binomial(q) / (Q.qpow(comb(n, 2) + 1) * al ** (2 * n + 2) * be * mono_pow(ga, n))
    first = (FactorProduct.one().times_binomial(-a2 * q).times_binomial(a2 * b2)
             .times_binomial(a2 * g2))
    second = (FactorProduct.one().times_binomial(-Q.qpow(-n))
              .times_binomial(a2 * b2 * g2 * Q.qpow(n - 1)).times_binomial(al ** 4 * q2))
    brace = first.to_ratfunc() + (-second).to_ratfunc()
    return pre.to_ratfunc() * brace


# --------------------------------------------------------------------------
# the constant C


def _eps(r):
    return sgn(r.M * r.N)


def two_exponent(r):
    a, b, m, M, N = r.a, r.b, r.m, r.M, r.N
    return (HALF * m * (a + b + M + N) + a * b - Fraction(a + b, 2)
            + HALF * max(abs(a - b), abs(M - N)))


def prefactor_lines(r, Q=SYMBOLIC):
    """The factors of C in display order, as ``(label, FactorProduct)`` pairs.

    Raises :class:`QDomainError` in the regions where C has a pole; see
    :func:`prefactor_parts`.
    """
    lines, order = prefactor_parts(r, Q)
    if order:
        raise QDomainError(f"prefactor line '{_POLE_LINE}': H_{{q^2}} argument "
                           f"{_pole_arg(r)} is a negative integer (pole of order {order})")
    return lines


_POLE_LINE = "(c+|M|)-floors over (a+b) factors"


def _pole_arg(r):
    return Fraction(r.a + r.b - abs(r.M) - abs(r.N) + r.m + 1, 2)


def prefactor_parts(r, Q=SYMBOLIC):
    """``(lines, order)`` with the factor ``H_{q^2}((a+b-|M|-|N|+m+1)/2)`` continued.

    When M and N have opposite signs that argument can drop below -1/2.  At
    half-integers the continued value is exact and ``order`` is 0.  At a
    negative integer (m odd) the returned lines hold the regular part and
    ``order`` is the order of the pole of C under ``q^{m/2} -> u q^{m/2}``,
    i.e. ``C = lines * (1 - u^2)^(-order) + ...``.
    """
    a, b, c, m, M, N = r.as_tuple()
    aM, aN = abs(M), abs(N)
    eps = _eps(r)
    H = lambda *xs: hprod(h_q, xs, Q, 1)
    H2 = lambda *xs: hprod(h_q, xs, Q, 2)
    H4 = lambda *xs: hprod(h_q, xs, Q, 4)
    Hm = lambda *xs: hprod(h_minus, xs, Q, 1)
    Hm2 = lambda *xs: hprod(h_minus, xs, Q, 2)
    He = lambda *xs: hprod(lambda x, *_: h_eps(x, eps, Q, 1), xs)
    f = Fraction
    h = HALF

    def sign_and_two():
        e2 = two_exponent(r)
        if e2.denominator != 1:
            raise ArithmeticError(f"power of 2 is not an integral: {e2}")
        s = (-1) ** (comb(aN, 2) % 2) * eps ** ((comb(aM, 2) + N * (b + M)) % 2)
        return FactorProduct(mpq(s) / mpq(2) ** int(e2))

    def line_a():
        return H2(f(m, 2)) ** 2 / H(aM, aN)

    def floors4(x):
        return H2(fl(f(x, 2)), fl(f(x + 1, 2)), fl(f(x, 2)) + f(m + 1, 2),
                  fl(f(x + 1, 2)) + f(m - 1, 2))

    pole = [0]

    def line_c():
        hc, pole[0] = h_q_cont(_pole_arg(r), Q, 2)
        return floors4(c + aM) / (H(f(a + b - M - N, 2), f(a + b + M + N, 2) + m)
                                  * hc * H2(f(a + b + aM + aN + m - 1, 2)))

    def line_n1():
        return H2(f(a + c + N, 2) + m) / (H2(f(a + c + N, 2), f(a + c - aN + m - 1, 2))
                                          * H2(f(a + c - aN, 2) + m) ** 2
                                          * H4(f(a + c - aN + m + 1, 2)))

    def line_n2():
        return Hm(a + c + m) / Hm2(f(a + c - aN + m, 2), f(a + c + aN + m - 1, 2),
                                   f(a + c + aN + m, 2))

    def line_m1():
        return H2(f(b + c - M, 2)) / (H2(f(b + c - M, 2) + m, f(b + c + aM + m + 1, 2))
                                      * H2(f(b + c + aM, 2)) ** 2
                                      * H4(f(b + c + aM + m - 1, 2)))

    def line_m2():
        return (Hm(b + c + m) / Hm2(f(b + c - aM + m, 2), f(b + c - aM + m + 1, 2),
                                    f(b + c + aM + m, 2))
                / Hm(abs(f(a - b + M - N, 2)), abs(f(a - b - M + N, 2))))

    def line_s1():
        s = a + b + c - aN
        return H2(fl(f(s, 2)) + m, fl(f(s + 1, 2)) + m)

    def line_s2():
        s = a + b + c - aN
        return H2(fl(f(s, 2)) + f(m + 1, 2), fl(f(s + 1, 2)) + f(m - 1, 2))

    def line_e():
        s = a + b + 2 * c
        return (He(f(s - aM + aN, 2) + m, f(s + aM - aN, 2) + m)
                / He(f(s - aM - aN, 2) + m, f(s + aM + aN, 2) + m))

    lines = [("sign and power of 2", sign_and_two), ("H_{q^2}(m/2)^2 / H_q(|M|,|N|)", line_a),
             ("a-floors", lambda: floors4(a)), ("b-floors", lambda: floors4(b)),
             ("(c+|M|)-floors over (a+b) factors", line_c), ("N-block, H_{q^2}/H_{q^4}", line_n1),
             ("N-block, H^-", line_n2), ("M-block, H_{q^2}/H_{q^4}", line_m1),
             ("M-block, H^-", line_m2), ("(a+b+c-|N|) integer shift", line_s1),
             ("(a+b+c-|N|) half shift", line_s2), ("H^{-eps} ratio", line_e)]
    out = []
    for label, fn in lines:
        try:
            out.append((label, fn()))
        except QDomainError as e:
            raise QDomainError(f"prefactor line '{label}': {e}") from None
    return out, pole[0]


def prefactor_C(r, Q=SYMBOLIC):
    """The constant C as a single FactorProduct."""
    out = FactorProduct.one()
    for _, p in prefactor_lines(r, Q):
        out = out * p
    return out


def theorem_parameters(r, Q=SYMBOLIC):
    """``(alpha, beta, gamma)`` at which the determinant is evaluated."""
    a, b, c, m, M, N = r.as_tuple()
    eps = _eps(r)
    al = Q.qpow(Fraction(1 - b - c - m - abs(M), 2))
    be = -eps * Q.qpow(Fraction(1 + a + c + m - abs(N), 2))
    ga = Q.qpow(Fraction(m + 1, 2))
    return al, be, ga


def theorem_det(r, Q=SYMBOLIC):
    al, be, ga = theorem_parameters(r, Q)
    return q_det(abs(r.M), abs(r.N), r.b, al, be, ga, Q)


def apply_prefactor(p, C):
    """``C * p`` for a QLaurent ``p``; every denominator factor must divide exactly."""
    C = C.reduced()
    if C.scalar == 0:
        return QLaurent.zero()
    if C.ushift:
        raise ValueError("prefactor depends on the perturbation variable")
    out = p * QLaurent.monomial(C.scalar, C.tshift)
    for bnm, k in sorted(C.num.items(), key=lambda it: (it[0].texp, str(it[0].coef))):
        for _ in range(k):
            out = out.mul_binomial(bnm.coef, bnm.texp)
    for bnm, k in sorted(C.den.items(), key=lambda it: (it[0].texp, str(it[0].coef))):
        for _ in range(k):
            out = out.div_binomial(bnm.coef, bnm.texp)
    return out


def theorem_Z(r):
    """Closed form ``Z(q) = C * Q^{|M|,|N|,b}(...)`` as an exact QLaurent.

    Where C has a pole the determinant vanishes, and Z is the limit of the
    product under ``q^{m/2} -> u q^{m/2}`` (see :func:`prefactor_parts`).

    Raises :class:`~qhex.exactalg.InexactDivisionError` if a denominator
    factor of C does not divide the determinant.
    """
    lines, order = prefactor_parts(r)
    C = FactorProduct.one()
    for _, p in lines:
        C = C * p
    if not order:
        return apply_prefactor(theorem_det(r), C)
    return apply_prefactor(_pole_limit(r, order), C)


# u is carried as t**_KRON; every u-coefficient of the deformed determinant
# must fit well inside one window of that width
_KRON = 1 << 20


def _pole_limit(r, order):
    """``lim_{u->1} Q(alpha/u, beta*u, gamma*u) / (1 - u^2)^order``.

    With ``u = 1 + eps`` the determinant must vanish to order ``order`` in
    eps; its leading coefficient comes from the constant and linear Taylor
    rows alone once both are packed into integers.
    """
    al, be, ga = theorem_parameters(r)
    U = Mono(1, _KRON)
    rows = q_matrix(abs(r.M), abs(r.N), r.b, al / U, be * U, ga * U)
    coeffs = [[_taylor_at_one(e, 1) for e in row] for row in rows]
    layers = [[[c[i] for c in row] for row in coeffs] for i in range(2)]
    kr = KroneckerRows(layers)
    k, c = int_det_leading(*(kr.pack(layer) for layer in layers))
    if k < order:
        raise ArithmeticError("deformed determinant does not vanish to the pole order")
    if k > order:
        return QLaurent.zero()
    # 1 - u^2 = -eps (2 + eps)
    return kr.unpack(c).scale(mpq(1) / mpq(-2) ** order)


def _taylor_at_one(p, order):
    """Split ``p = sum_j c_j(t) u^j`` (``u = t**_KRON``) into ``[eps^i] p(1 + eps)``."""
    by_u = {}
    for e, c in p.items():
        j = (e + _KRON // 2) // _KRON
        rest = e - j * _KRON
        if abs(rest) >= _KRON // 4:
            raise ArithmeticError("u-window overflow in the deformed determinant")
        by_u.setdefault(j, {})[rest] = c
    out = []
    for i in range(order + 1):
        acc = QLaurent.zero()
        for j, terms in by_u.items():
            bj = mpq(1)
            for l in range(i):
                bj = bj * (j - l) / (l + 1)
            if bj:
                acc = acc + QLaurent(terms).scale(bj)
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# the (M, N) -> (-M, -N) symmetry


def symmetry_ratio(r, Q=SYMBOLIC):
    """``Z_{M,N} / Z_{-M,-N}`` as a FactorProduct."""
    a, b, c, m, M, N = r.as_tuple()
    f = Fraction
    H = lambda *xs: hprod(h_q, xs, Q, 1)
    H2 = lambda *xs: hprod(h_q, xs, Q, 2)
    out = FactorProduct(mpq(1) / mpq(2) ** (m * (M + N)) if m * (M + N) >= 0
                        else mpq(2) ** (-m * (M + N)))
    out = out * H(f(a + b + M + N, 2), f(a + b - M - N, 2) + m) / H(f(a + b - M - N, 2),
                                                                   f(a + b + M + N, 2) + m)
    out = out * H2(f(a + c - N, 2), f(a + c + N, 2) + m, f(b + c - M, 2), f(b + c + M, 2) + m)
    out = out / H2(f(a + c + N, 2), f(a + c - N, 2) + m, f(b + c + M, 2), f(b + c - M, 2) + m)
    return out


def symmetry_check(r, z=None, z_mirror=None):
    """``Z_{M,N} = ratio * Z_{-M,-N}`` exactly (closed forms unless given)."""
    z = theorem_Z(r) if z is None else z
    zm = theorem_Z(r.mirrored()) if z_mirror is None else z_mirror
    return apply_prefactor(zm, symmetry_ratio(r)) == z


# --------------------------------------------------------------------------
# determinant inversion symmetry


def qdi_sides(M, N, n, al, be, ga, t0):
    """Both sides of the inversion symmetry at ``q = t0**4`` (numbers)."""
    lhs = q_det(M, N, n, al, be, ga, QField(t0=t0))
    inv = QField(t0=1 / mpq(t0))
    rhs = q_det(M, N, n, al.inverse(), be.inverse(), ga.inverse(), inv)
    sign = (-1) ** ((M * N + n * (M + N)) % 2)
    return lhs.constant_value(), sign * rhs.constant_value()


def qdi_check(M, N, n, al, be, ga, t0=mpq(3, 5)):
    lhs, rhs = qdi_sides(M, N, n, al, be, ga, t0)
    return lhs == rhs


# --------------------------------------------------------------------------
# the multiple 4phi3 as a Q-determinant (numeric checks)

# generic point for the checks below: q = t0**4 and rational alpha, beta
CHAIN_T0 = mpq(3, 5)
CHAIN_ALPHA = mpq(2, 7)
CHAIN_BETA = mpq(5, 11)


def _value(x):
    if isinstance(x, QLaurent):
        return x.constant_value()
    if isinstance(x, FactorProduct):
        x = x.to_ratfunc()
    return ratvalue(x)


def _floor_sq4(k):
    return (k * k) // 4


def dsdc_sides(m, n, M, N, al, be, Q):
    """Both sides for non-negative ``M, N`` and even ``m``, as numbers."""
    if m % 2 or min(m, n, M, N) < 0:
        raise ValueError("need m even and m, n, M, N >= 0")
    q, q2 = Q.q, Q.qpow(2)
    P = lambda x, k, base=q: poch(x, base, k)
    a2b2 = al ** 2 * be ** 2
    lhs = multi_phi43(m, [Q.qpow(1 - m - n), a2b2 * Q.qpow(M + N + n - 1),
                          al * Q.qpow(Fraction(2 * M - m + 1, 2)),
                          -al * Q.qpow(Fraction(2 * M - m + 1, 2))],
                      [al ** 2 * Q.qpow(M), al * be * Q.qpow(M), -al * be * Q.qpow(M + N)],
                      q, q, m + n - 1)
    X = (2 * comb(m, 3) + comb(m, 2) + 3 * comb(M, 3) + 3 * comb(N, 3) + comb(M, 2)
         + (M + 1) * comb(N, 2)
         + (comb(M, 2) + comb(N, 2) + m * (M + Fraction(m, 4) - HALF)) * n
         + HALF * (comb(M + N + n, 3) - comb(n, 3))
         + Fraction(m, 2) * (_floor_sq4(M + N + n - 1) - _floor_sq4(n - 1)))
    sign = (-1) ** ((comb(M + N, 2) + n * (M + N + m // 2)) % 2)
    pre = FactorProduct.from_mono(al ** ((M + m) * n + 2 * comb(M, 2) + comb(N, 2))
                                  * be ** ((M + n) * N + comb(M, 2) + 2 * comb(N, 2))
                                  * Q.qpow(X) * Mono(sign, 0))
    for j in range(1, M + 1):
        pre = pre * P(al * be * Q.qpow(j + n - 1), N)
        pre = pre / (P(q, j - 1) * P(-al ** 2 * Q.qpow(j - 1), j - 1)
                     * P(Q.qpow(j - M) * be / al, N))
    for j in range(1, N + 1):
        pre = pre / (P(q, j - 1) * P(-be ** 2 * Q.qpow(j - 1), j - 1))
    for j in range(1, m // 2 + 1):
        x1, x2 = a2b2 * Q.qpow(2 * j - 3), a2b2 * Q.qpow(2 * j - 1)
        pre = pre * P(x1, (M + N + n + 1) // 2, q2) * P(x2, (M + N + n) // 2, q2)
        pre = pre / (P(x1, M + N + n, q2) * P(x2, n, q2))
    for j in range(1, m + 1):
        pre = pre * P(a2b2 * Q.qpow(M + N + n - 1), n + j - 1) * pochs([q, Q.qpow(1 - m - n)], q, j - 1)
        pre = pre * P(al ** 2 * Q.qpow(2 * M - m + 1), j - 1, q2)
        pre = pre / pochs([al ** 2 * Q.qpow(M), al * be * Q.qpow(M), -al * be * Q.qpow(M + N)],
                          q, n + j - 1)
    for j in range(1, n + 1):
        e1, e0 = 2 * (j // 2), 2 * ((j - 1) // 2)
        pre = pre * pochs([Q.qpow(e1 + 1), al ** 2 * Q.qpow(e0 + 1), be ** 2 * Q.qpow(e0 + 1)],
                          q2, m // 2)
        pre = pre / (P(al ** 2 * Q.qpow(j - 1), M) * P(be ** 2 * Q.qpow(j - 1), N))
    for j in range(1, M + N + 1):
        pre = pre / P(a2b2 * Q.qpow(j + 2 * n - 2), j - 1)
    det_ = q_det(M, N, n, al, be, Q.qpow(Fraction(m + 1, 2)), Q)
    return _value(lhs), _value(pre) * _value(det_)


def fpc_sides(m, n, M, N, al, be, Q):
    """Both sides for integer ``M, N`` (either sign) and even ``m``, as numbers."""
    if m % 2 or min(m, n) < 0:
        raise ValueError("need m even and m, n >= 0")
    q, q2 = Q.q, Q.qpow(2)
    P = lambda x, k, base=q: poch(x, base, k)
    aM, aN = abs(M), abs(N)
    eps = sgn(M * N)
    a2b2 = al ** 2 * be ** 2
    h = Fraction(M - m + 1, 2)
    lhs = multi_phi43(m, [Q.qpow(1 - m - n), a2b2 * Q.qpow(n - 1), al * Q.qpow(h), -al * Q.qpow(h)],
                      [al ** 2, al * be * Q.qpow(Fraction(M + N, 2)),
                       -al * be * Q.qpow(Fraction(M - N, 2))],
                      q, q, m + n - 1)
    X = (2 * comb(m, 3) + comb(m, 2) - Fraction(aN * (aM * aM + aM * aN + 2 * aN - 2), 4)
         + HALF * (m * (m + M - 1) + aM * (aM + 1 - m - n) - aN) * n
         + HALF * (comb(aM + aN + n, 3) - comb(n, 3))
         + Fraction(m, 2) * (_floor_sq4(aM + aN + n - 1) + _floor_sq4(n - 1)))
    sign = (-1) ** (comb(aN, 2) % 2) * eps ** ((comb(aM, 2) + N * (n + M)) % 2)
    pre = FactorProduct.from_mono(al ** ((2 * m - aM) * n + comb(aN, 2))
                                  * be ** (n * aN + comb(aM + aN, 2) + comb(aN, 2))
                                  * Q.qpow(X) * Mono(sign, 0))
    s = Fraction(aM + aN, 2)
    for j in range(1, aM + 1):
        pre = pre * P(-eps * al * be * Q.qpow(j + n - 1 - s), aN)
        pre = pre / (P(q, j - 1) * P(-Q.qpow(j + 1 - aM) / al ** 2, j - 1)
                     * P(-eps * Q.qpow(j - s) * be / al, aN))
    for j in range(1, m // 2 + 1):
        x1, x2 = a2b2 * Q.qpow(2 * j - 3 - aM - aN), a2b2 * Q.qpow(2 * j - 1 - aM - aN)
        pre = pre * P(x1, (aM + aN + n + 1) // 2, q2) * P(x2, (aM + aN + n) // 2, q2)
        pre = pre / (P(x1, aM + aN + n, q2) * P(x2, n, q2))
    for j in range(1, m + 1):
        pre = pre * P(a2b2 * Q.qpow(n - 1), n + j - 1) * pochs([q, Q.qpow(1 - m - n)], q, j - 1)
        pre = pre * P(al ** 2 * Q.qpow(M - m + 1), j - 1, q2)
        pre = pre / pochs([al ** 2, al * be * Q.qpow(Fraction(M + N, 2)),
                           -al * be * Q.qpow(Fraction(M - N, 2))], q, n + j - 1)
    for j in range(1, n + 1):
        e1, e0 = 2 * (j // 2), 2 * ((j - 1) // 2)
        pre = pre * pochs([Q.qpow(e1 + 1), Q.qpow(-e0 + 1 - m + aM) / al ** 2,
                           be ** 2 * Q.qpow(-aN + e0 + 1)], q2, m // 2)
        pre = pre / (P(Q.qpow(j + 1 - n) / al ** 2, aM) * P(be ** 2 * Q.qpow(j - 1 - aN), aN))
    for j in range(1, aM + aN + 1):
        pre = pre / P(a2b2 * Q.qpow(j + 2 * n - 2 - aM - aN), j - 1)
    for j in range(1, aN + 1):
        pre = pre / (P(q, j - 1) * P(-Q.qpow(j - aN - 1) * be ** 2, j - 1))
    det_ = q_det(aM, aN, n, al * Q.qpow(-Fraction(aM, 2)), -eps * be * Q.qpow(-Fraction(aN, 2)),
                 Q.qpow(Fraction(m + 1, 2)), Q)
    return _value(lhs), _value(pre) * _value(det_)


def _chain_args(al, be, t0):
    Q = QField(t0=t0)
    return Mono(mpq(al), 0), Mono(mpq(be), 0), Q


def dsdc_check(m, n, M, N, al=CHAIN_ALPHA, be=CHAIN_BETA, t0=CHAIN_T0):
    lhs, rhs = dsdc_sides(m, n, M, N, *_chain_args(al, be, t0))
    return lhs == rhs


def fpc_check(m, n, M, N, al=CHAIN_ALPHA, be=CHAIN_BETA, t0=CHAIN_T0):
    lhs, rhs = fpc_sides(m, n, M, N, *_chain_args(al, be, t0))
    return lhs == rhs
