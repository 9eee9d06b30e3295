"""q-Pochhammer symbols, q-hyperfactorials and terminating basic
hypergeometric sums, all in factored form.

Parameters are :class:`~qhex.exactalg.Mono` values.  A :class:`QField` says
where ``q`` lives: symbolically as ``t**4`` or numerically at ``q = t0**4``
for a rational (or Gaussian rational) ``t0``.  The same code therefore gives
exact polynomial identities and exact evaluations at generic points.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, floor

from gmpy2 import iroot, mpq

from .exactalg import (
    FactorProduct,
    Mono,
    PerturbedValue,
    RatFunc,
    SingularTermError,
    canonical_binomial,
    cpow,
    Binomial,
)


class QDomainError(ValueError):
    """Argument outside the domain of a q-hyperfactorial."""


class QField:
    """Home of ``q``.

    ``QField()`` is the formal variable ``q = t**4``; ``QField(t0=...)`` the
    number ``q = t0**4`` (all quarter powers of ``q`` available);
    ``QField(q=...)`` a number ``q`` with integer powers only.
    """

    def __init__(self, t0=None, q=None):
        if t0 is not None and q is not None:
            raise ValueError("give t0 or q, not both")
        self.t0 = _num(t0)
        self.q0 = _num(q)

    @property
    def symbolic(self):
        return self.t0 is None and self.q0 is None

    def qpow(self, r):
        """``q**r`` for ``r`` a multiple of 1/4 (integer ``r`` if built from ``q``)."""
        e = Fraction(r) * 4
        if e.denominator != 1:
            raise ValueError(f"q**{r} is not an integral power of q**(1/4)")
        e = int(e)
        if self.q0 is not None:
            if e % 4:
                raise ValueError(f"q**{r} needs a fourth root of q; build the field from t0")
            return Mono(cpow(self.q0, e // 4), 0)
        if self.t0 is None:
            return Mono(1, e)
        return Mono(cpow(self.t0, e), 0)

    @property
    def q(self):
        return self.qpow(1)

    def __repr__(self):
        if self.symbolic:
            return "QField(symbolic)"
        if self.q0 is not None:
            return f"QField(q={self.q0})"
        return f"QField(t0={self.t0})"


def _num(x):
    if x is None:
        return None
    if isinstance(x, (int, str, Fraction)):
        return mpq(x) if not isinstance(x, Fraction) else mpq(x.numerator, x.denominator)
    return x


def num(c):
    """A number as a t-free :class:`Mono` parameter."""
    return Mono(_num(c), 0)


SYMBOLIC = QField()


def mono_pow(x, r):
    """``x**r`` for a Mono and rational ``r``; roots must be exact."""
    r = Fraction(r)
    if r.denominator == 1:
        return x ** int(r)
    d = r.denominator
    if x.texp % d or x.uexp % d:
        raise ValueError(f"{x} has no exact {d}-th root")
    c = x.coef
    if not hasattr(c, "numerator"):
        raise ValueError("roots of Gaussian coefficients are not supported")
    num, den = int(c.numerator), int(c.denominator)
    if num < 0 and d % 2 == 0:
        raise ValueError(f"{x} has no real {d}-th root")
    rn, okn = iroot(abs(num), d)
    rd, okd = iroot(den, d)
    if not (okn and okd):
        raise ValueError(f"{c} is not a perfect {d}-th power")
    root = Mono(mpq(-int(rn) if num < 0 else int(rn), int(rd)), x.texp // d, x.uexp // d)
    return root ** r.numerator


def as_half(x):
    """Validate an integer or half-integer argument and return it as a Fraction."""
    x = Fraction(x)
    if x.denominator not in (1, 2):
        raise QDomainError(f"{x} is not an integer or half-integer")
    return x


# --------------------------------------------------------------------------
# Pochhammer symbols


def _base(base):
    if isinstance(base, Mono):
        return base
    return Mono(1, base)


def poch(a, base, n):
    """``(a; base)_n`` as a FactorProduct.

    ``base`` is a :class:`Mono` or a t-exponent (4 for ``q``, 8 for ``q**2``,
    2 for ``q**(1/2)``).  Negative ``n`` uses ``(a;q)_{-n} = 1/(a q^{-n};q)_n``.
    """
    base = _base(base)
    out = FactorProduct.one()
    if n >= 0:
        x = a
        for _ in range(n):
            out = out.times_binomial(x)
            x = x * base
        return out
    x = a * base ** n
    for _ in range(-n):
        out = out.times_binomial(x, -1)
        x = x * base
    return out


def pochs(params, base, n):
    """``(a_1, ..., a_r; base)_n``."""
    out = FactorProduct.one()
    for a in params:
        out = out * poch(a, base, n)
    return out


# --------------------------------------------------------------------------
# q-hyperfactorials


def h_tilde(x, Q=SYMBOLIC, k=1):
    """``H~_{q^k}(x)`` for integer ``x >= 0`` or half-integer ``x >= -1/2``."""
    x = as_half(x)
    if x < Fraction(-1, 2):
        raise QDomainError(f"H~ argument {x} < -1/2")
    base = Q.qpow(k)
    out = FactorProduct.one()
    if x.denominator == 1:
        for j in range(1, int(x) + 1):
            out = out * poch(base, base, j - 1)
    else:
        half = Q.qpow(Fraction(k, 2))
        for j in range(1, int(x + Fraction(1, 2)) + 1):
            out = out * poch(half, base, j - 1)
    return out


def h_q(x, Q=SYMBOLIC, k=1):
    """``H_{q^k}(x)``: :func:`h_tilde` times its monomial prefactor."""
    x = as_half(x)
    out = h_tilde(x, Q, k)
    if x.denominator == 1:
        e = -Fraction(comb(int(x) + 1, 3), 2)
    else:
        e = -Fraction(comb(int(2 * x + 1), 3), 16)
    return out * Q.qpow(e * k)


def _binom3(n):
    # polynomial continuation of binom(n, 3)
    return Fraction(n * (n - 1) * (n - 2), 6)


def h_tilde_cont(x, Q=SYMBOLIC, k=1):
    """``H~_{q^k}`` continued below ``-1/2`` through ``H~(x+1) = H~(x) (p;p)_x``.

    Returns ``(reg, order)``.  Half-integers give an exact value and order 0.
    At an integer ``x <= -1`` the continuation vanishes: shifting the argument
    to ``x + d`` gives ``H~ = reg * (1 - p^d)^order + ...`` with ``p = q^k``.
    """
    x = as_half(x)
    if x >= Fraction(-1, 2):
        return h_tilde(x, Q, k), 0
    base = Q.qpow(k)
    out = FactorProduct.one()
    if x.denominator == 1:
        for i in range(int(x), 0):
            out = out * poch(base ** (i + 1), base, -i - 1)
        return out, -int(x)
    half = Q.qpow(Fraction(k, 2))
    y = x
    while y < Fraction(-1, 2):
        n = -int(y + Fraction(1, 2))
        out = out * poch(half * base ** (-n), base, n)
        y += 1
    return out, 0


def h_q_cont(x, Q=SYMBOLIC, k=1):
    """:func:`h_q` with the continuation of :func:`h_tilde_cont`."""
    x = as_half(x)
    reg, order = h_tilde_cont(x, Q, k)
    if x.denominator == 1:
        e = -_binom3(int(x) + 1) / 2
    else:
        e = -_binom3(int(2 * x + 1)) / 16
    return reg * Q.qpow(e * k), order


def h_minus(x, Q=SYMBOLIC, k=1):
    """``H^-_{q^k}(x) = H_{q^{2k}}(x) / H_{q^k}(x)``."""
    return h_q(x, Q, 2 * k) / h_q(x, Q, k)


def h_tilde_minus(x, Q=SYMBOLIC, k=1):
    return h_tilde(x, Q, 2 * k) / h_tilde(x, Q, k)


def h_eps(x, eps, Q=SYMBOLIC, k=1):
    """``H^{-eps}``: :func:`h_minus` for ``eps=+1`` and :func:`h_q` for ``eps=-1``."""
    if eps == 1:
        return h_minus(x, Q, k)
    if eps == -1:
        return h_q(x, Q, k)
    raise ValueError("eps must be +1 or -1")


def hprod(fn, args, *rest):
    """Repeated-argument product, e.g. ``hprod(h_q, [a, b])`` = ``H(a) H(b)``."""
    out = FactorProduct.one()
    for x in args:
        out = out * fn(x, *rest)
    return out


def hyperfactorial(n):
    """Classical ``H(n) = prod_{k=1}^n (k-1)!``."""
    out = 1
    f = 1
    for k in range(1, n + 1):
        out *= f
        f *= k
    return out


def floor_half(x):
    return floor(Fraction(x))


# --------------------------------------------------------------------------
# u handling


def strip_u(p):
    """Set the perturbation variable to 1."""
    out = FactorProduct(p.scalar, p.tshift, 0)
    for b, k in p.num.items():
        out.num[Binomial(b.coef, b.texp, 0)] += k
    for b, k in p.den.items():
        out.den[Binomial(b.coef, b.texp, 0)] += k
    return out


def _strip_mono(m):
    return Mono(m.coef, m.texp, 0)


def sum_terms(terms, what="series"):
    """Sum FactorProducts; fall back to perturbation if a term is singular at u=1.

    Terms may carry the perturbation variable ``u`` on a designated parameter;
    it is ignored unless some term has a vanishing denominator factor.
    """
    terms = list(terms)
    total = RatFunc.zero()
    try:
        for p in terms:
            r = strip_u(p).reduced()
            if r.scalar == 0:
                continue
            total = total + RatFunc(r.numerator_laurent(), r.den)
        return total
    except SingularTermError:
        if not any(p.depends_on_u() for p in terms):
            raise SingularTermError(f"singular term in {what} and no perturbed parameter") from None
    acc = PerturbedValue.zero(1)
    for p in terms:
        r = p.reduced()
        if r.scalar == 0:
            continue
        acc = acc + PerturbedValue.from_product(r, 1)
    return acc.at_one()


# --------------------------------------------------------------------------
# terminating series


def phi43_terms(upper, lower, base, arg, cap, prefactor=None):
    """Folded summands ``prefactor * (upper)_k/(base, lower)_k * arg**k``, k <= cap."""
    base = _base(base)
    pre = prefactor if prefactor is not None else FactorProduct.one()
    for k in range(cap + 1):
        term = pre * pochs(upper, base, k) / pochs([base] + list(lower), base, k)
        yield term * (arg ** k)


def _termination(upper, base, Q):
    # index n with an upper parameter base**(-n), if present
    base = _base(base)
    for a in upper:
        if a.uexp:
            continue
        if base.texp:
            if a.coef == 1 and a.texp % base.texp == 0 and a.texp <= 0 and base.coef == 1:
                return -a.texp // base.texp
        else:
            # numeric base: search for base**(-n) == a
            x = Mono(1)
            for n in range(0, 64):
                if x.coef == a.coef and x.texp == a.texp:
                    return n
                x = x / base
    return None


def phi43(upper, lower, base, arg, cap=None, prefactor=None):
    """Terminating ``4phi3`` (any ``r+1 phi r``) as an exact :class:`RatFunc`.

    ``cap`` bounds the summation index; when omitted it is read off an upper
    parameter of the form ``base**(-n)``.  ``prefactor`` is folded into every
    summand before zero detection.
    """
    if cap is None:
        cap = _termination(upper, base, None)
        if cap is None:
            raise ValueError("unterminated series: no base**(-n) upper parameter and no cap")
    return sum_terms(phi43_terms(upper, lower, base, arg, cap, prefactor), "phi43")


def vandermonde_sq(ks, base):
    """``prod_{i<j} (base**k_j - base**k_i)**2`` as a FactorProduct."""
    base = _base(base)
    out = FactorProduct.one()
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            lo = base ** ks[i]
            out = out * (lo ** 2)
            out = out.times_binomial(base ** (ks[j] - ks[i]), 2)
    return out


def multi_phi43_terms(m, upper, lower, base, arg, cap, per_index_prefactor=None):
    base = _base(base)
    single = []
    for k in range(cap + 1):
        single.append(pochs(upper, base, k) / pochs([base] + list(lower), base, k) * (arg ** k))
    pre = [per_index_prefactor(j) if per_index_prefactor else FactorProduct.one()
           for j in range(1, m + 1)]
    for ks in combinations(range(cap + 1), m):
        term = vandermonde_sq(ks, base)
        for j, k in enumerate(ks):
            term = term * pre[j] * single[k]
        yield term


def multi_phi43(m, upper, lower, base, arg, cap, per_index_prefactor=None):
    """Multiple series over ``0 <= k_1 < ... < k_m <= cap`` with weight ``Delta(base**k)**2``.

    ``per_index_prefactor(j)`` (``j = 1..m``) is folded into the ``j``-th
    factor of each summand, so a vanishing prefactor factor is cancelled
    term by term; tuples where it survives contribute zero.
    """
    if m == 0:
        pre = FactorProduct.one()
        return sum_terms([pre], "multi_phi43")
    return sum_terms(multi_phi43_terms(m, upper, lower, base, arg, cap, per_index_prefactor),
                     "multi_phi43")


def ratvalue(r):
    """Number from a constant RatFunc (numeric fields)."""
    if r.den:
        r = r.simplify()
        if r.den:
            raise ValueError("not a constant")
    return r.num.constant_value()


# --------------------------------------------------------------------------
# multiple Sears transformation


def sears_sides(m, n, a, b, c, d, e, f, Q=SYMBOLIC):
    """Both sides of the multiple Sears transformation as RatFuncs."""
    q = Q.q
    lhs_bal = q ** (1 - n) * a * b * c
    rhs_bal = d * e * f
    if _strip_mono(lhs_bal) != _strip_mono(rhs_bal):
        raise ValueError("balancing condition q^(1-n) abc = def violated")
    cap = m + n - 1
    top = q ** (1 - m - n)
    lhs = multi_phi43(m, [top, a, b, c], [d * q ** (m - 1), e, f], q, q, cap)
    bc = b * c
    pre = FactorProduct.from_mono((bc / d) ** (m * n))
    for j in range(1, m + 1):
        pre = pre * pochs([b, c], q, j - 1) * pochs([d * e / bc, d * f / bc], q, n + j - 1)
        pre = pre / (pochs([d / b, d / c], q, j - 1) * pochs([e, f], q, n + j - 1))
    inner = multi_phi43(m, [top, a, d / b, d / c], [d * q ** (m - 1), d * e / bc, d * f / bc],
                        q, q, cap)
    rhs = pre.to_ratfunc() * inner
    return lhs, rhs


def sears_multi_check(m, n, a, b, c, d, e, f, Q=SYMBOLIC):
    """True iff the two sides of the multiple Sears transformation agree exactly."""
    lhs, rhs = sears_sides(m, n, a, b, c, d, e, f, Q)
    return lhs.equals(rhs)


# --------------------------------------------------------------------------
# hyperfactorial identities


def same_value(p1, p2):
    """Exact equality of two FactorProducts as rational functions."""
    r = (p1 / p2).reduced()
    return r.numerator_laurent() == r.denominator_laurent()


def qhl_sides(m, Q=SYMBOLIC, tilde=True):
    """``H(m)`` over ``q`` against ``H((m-1)/2, m/2, m/2, (m+1)/2)`` over ``q**2``."""
    h = h_tilde if tilde else h_q
    half = Fraction(1, 2)
    lhs = h(m, Q, 1)
    rhs = hprod(h, [Fraction(m - 1, 2), half * m, half * m, Fraction(m + 1, 2)], Q, 2)
    return lhs, rhs


def qhl_check(m, Q=SYMBOLIC):
    return all(same_value(*qhl_sides(m, Q, tilde)) for tilde in (True, False))


def phl_sides(k, l, m, Q=SYMBOLIC):
    """The six product identities as (lhs, rhs) pairs.

    The first three need integer ``l``; the last three accept ``2l+1 >= 0``.
    """
    q = Q.q
    Ht = lambda *xs: hprod(h_tilde, xs, Q, 1)
    H2 = lambda *xs: hprod(h_tilde, xs, Q, 2)
    l = Fraction(l)
    half = Fraction(1, 2)
    out = []
    if l.denominator == 1:
        L = int(l)
        lhs = FactorProduct.one()
        for j in range(1, k + 1):
            lhs = lhs * poch(q, q, m + j - 1)
        out.append((lhs, Ht(k + m) / Ht(m)))
        lhs = FactorProduct.one()
        for j in range(1, k + 1):
            lhs = lhs * poch(q ** (L + j), q, m)
        out.append((lhs, Ht(L, k + L + m) / Ht(k + L, L + m)))
        lhs = FactorProduct.one()
        for j in range(1, k + 1):
            lhs = lhs * poch(q ** (L + j), q, j - 1)
        out.append((lhs, H2(half * L, half * (L + 1), half * (L - 1) + k, half * L + k) / Ht(L + k)))
    lhs = FactorProduct.one()
    for j in range(1, k + 1):
        lhs = lhs * poch(Q.qpow(l + 1 + (j - 1) // 2), q, m)
    out.append((lhs, Ht(l, l, l + m + k // 2, l + m + (k + 1) // 2)
                / Ht(l + m, l + m, l + k // 2, l + (k + 1) // 2)))
    lhs = FactorProduct.one()
    for j in range(1, k + 1):
        lhs = lhs * poch(Q.qpow(l + 1 + j // 2), q, m)
    out.append((lhs, Ht(l, l + 1, l + m + (k + 1) // 2, l + m + (k + 2) // 2)
                / Ht(l + m, l + m + 1, l + (k + 1) // 2, l + (k + 2) // 2)))
    eps = Fraction(k % 2, 2)
    if l - eps < -half:
        return out  # H~(-1) is undefined
    lhs = FactorProduct.one()
    for j in range(1, k + 1):
        lhs = lhs * poch(Q.qpow(l + Fraction(k, 2) - (j - 1) // 2), q, m)
    out.append((lhs, Ht(l - eps, l + eps, l + m + half * k, l + m + half * k)
                / Ht(l + m - eps, l + m + eps, l + half * k, l + half * k)))
    return out


def phl_check(k, l, m, Q=SYMBOLIC):
    return all(same_value(a, b) for a, b in phl_sides(k, l, m, Q))


def _c_const(n, Q):
    if n >= 0:
        return FactorProduct.one()
    return FactorProduct.from_mono(Mono(cpow(2, n), 0) * Q.qpow(Fraction(n - n ** 3, 6)))


def phlb_sides(k, l, m, Q=SYMBOLIC):
    q = Q.q
    lhs = FactorProduct.one()
    for j in range(1, k + 1):
        lhs = lhs * poch(-(q ** (l + j)), q, m)
    Hm = lambda *xs: hprod(h_tilde_minus, [abs(x) for x in xs], Q, 1)
    c = _c_const
    rhs = (c(k + l, Q) * c(l + m, Q) / (c(l, Q) * c(k + l + m, Q))
           * Hm(l, k + l + m) / Hm(k + l, l + m))
    return lhs, rhs


def phlb_check(k, l, m, Q=SYMBOLIC):
    return same_value(*phlb_sides(k, l, m, Q))


def hqd_sides(a, m, Q=SYMBOLIC):
    """``H~(a + m/2)`` against its factorization through ``H~(m/2)``.

    For odd ``m`` the leading factor is ``H~(m/2)``; the variant with
    ``H~((m+1)/2)`` fails already at ``a=1, m=3``.
    """
    q = Q.q
    half = Fraction(1, 2)
    lhs = h_tilde(a + half * m, Q)
    rhs = h_tilde(half * m, Q)
    if m % 2 == 0:
        rhs = rhs * poch(q, q, m // 2) ** a
    else:
        rhs = rhs * poch(Q.qpow(half), q, (m + 1) // 2) ** a
    for j in range(1, a + 1):
        rhs = rhs * poch(Q.qpow(1 + half * m), q, j - 1)
    return lhs, rhs


def hqd_check(a, m, Q=SYMBOLIC):
    return same_value(*hqd_sides(a, m, Q))
