"""Exact coefficient and Laurent-polynomial arithmetic.

Everything lives in one formal variable ``t`` with ``q = t**4``, so that
``q**(1/4)``, ``q**(1/2)`` and ``q`` are all integral powers of ``t``.
Coefficients are exact rationals (``gmpy2.mpq``) or Gaussian rationals
(:class:`GRat`) when an imaginary unit is needed.

The multiplicative layer (:class:`Mono`, :class:`Binomial`,
:class:`FactorProduct`) keeps products and quotients of q-Pochhammer factors
in factored form so that cancellation and zero detection are exact.  Sums of
such products are accumulated as :class:`RatFunc` values whose denominators
stay factored until an exact division at the very end.
"""

from __future__ import annotations

from collections import Counter
from math import comb, factorial, gcd
from typing import Iterable, Union

import gmpy2
from gmpy2 import mpq, mpz

Number = Union[int, "mpq", "GRat"]


class InexactDivisionError(ArithmeticError):
    """A polynomial division that was required to be exact left a remainder."""


class SingularTermError(ArithmeticError):
    """A vanishing factor survived in a denominator."""


# --------------------------------------------------------------------------
# coefficients


def rat(num, den=1):
    """Exact rational from ints, strings like ``"3/5"`` or other rationals."""
    if isinstance(num, str):
        if den != 1:
            raise TypeError("string input takes no separate denominator")
        return mpq(num)
    return mpq(num, den) if den != 1 else mpq(num)


class GRat:
    """Gaussian rational ``re + i*im`` with ``im != 0``.

    Use :func:`gaussian` to build values; it returns a plain ``mpq`` when the
    imaginary part vanishes, which keeps the real pipeline on the fast path.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    def __repr__(self):
        return f"GRat({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __hash__(self):
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(mpq(0)))):
            return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return True

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GRat):
            return gaussian(self.re + other.re, self.im + other.im)
        return GRat(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GRat):
            return gaussian(self.re - other.re, self.im - other.im)
        return GRat(self.re - other, self.im)

    def __rsub__(self, other):
        return GRat(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GRat):
            return gaussian(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        if other == 0:
            return mpq(0)
        return GRat(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conjugate(self):
        return GRat(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GRat):
            return self * other.inverse()
        return GRat(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        return other * self.inverse()

    def __pow__(self, n):
        return _power(self, n)


def gaussian(re, im=0):
    """Return ``re + i*im`` as ``mpq`` if ``im == 0`` and :class:`GRat` otherwise."""
    if im == 0:
        return mpq(re)
    return GRat(re, im)


I = GRat(0, 1)


def _power(x, n):
    if n < 0:
        return _power(1 / x if not isinstance(x, GRat) else x.inverse(), -n)
    result = mpq(1)
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def cpow(x, n):
    """Integer power of a rational or Gaussian rational (negative allowed)."""
    if isinstance(x, GRat):
        return _power(x, n)
    x = mpq(x)
    return x ** n


def format_number(c):
    if isinstance(c, GRat):
        return f"({c})"
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_number(s):
    s = s.strip()
    if s.startswith("(") and s.endswith("i)"):
        body = s[1:-2]
        # split at the last sign that is not the leading one
        k = max(body.rfind("+"), body.rfind("-"))
        while k > 0 and body[k - 1] in "eE/":
            k = max(body.rfind("+", 0, k), body.rfind("-", 0, k))
        return gaussian(mpq(body[:k]), mpq(body[k:].lstrip("+")))
    return mpq(s)


# --------------------------------------------------------------------------
# Laurent polynomials in t


class QLaurent:
    """Laurent polynomial in ``t`` (``q = t**4``) with exact coefficients.

    Stored as a dict from integer exponent to nonzero coefficient.  Instances
    are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls._raw({0: c}) if c != 0 else cls._raw({})

    @classmethod
    def monomial(cls, c, e):
        return cls._raw({e: c}) if c != 0 else cls._raw({})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: mpq(1)})

    # -- inspection --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def coeff(self, e):
        return self.terms.get(e, mpq(0))

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(0, mpq(0))

    def is_real(self):
        return not any(isinstance(c, GRat) for c in self.terms.values())

    def exponents_divisible_by(self, k):
        return all(e % k == 0 for e in self.terms)

    # -- ring structure ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QLaurent):
            return self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)), GRat)):
            return self.terms == ({0: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        return QLaurent._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, QLaurent):
            other = QLaurent.const(other)
        if len(self.terms) < len(other.terms):
            small, out = self.terms, dict(other.terms)
        else:
            small, out = other.terms, dict(self.terms)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return QLaurent._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QLaurent):
            other = QLaurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QLaurent):
            if other == 0:
                return QLaurent.zero()
            return QLaurent._raw({e: c * other for e, c in self.terms.items()})
        a, b = self.terms, other.terms
        if not a or not b:
            return QLaurent.zero()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return QLaurent._raw({e + eb: c * cb for e, c in a.items()})
        out = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = ea + eb
                out[e] = get(e, 0) + ca * cb
        return QLaurent({e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = QLaurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by ``t**k``."""
        if k == 0:
            return self
        return QLaurent._raw({e + k: c for e, c in self.terms.items()})

    def scale(self, c):
        return self * c

    def mul_binomial(self, c, e):
        """Multiply by ``1 - c*t**e``."""
        out = dict(self.terms)
        for ea, ca in self.terms.items():
            k = ea + e
            v = out.get(k, 0) - c * ca
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return QLaurent._raw(out)

    def div_binomial(self, c, e):
        """Exact division by ``1 - c*t**e``; raise :class:`InexactDivisionError` otherwise."""
        if e == 0:
            d = 1 - c
            if d == 0:
                raise ZeroDivisionError("division by the zero binomial")
            return self * (1 / d)
        if e < 0:
            # 1 - c t^e = -c t^e (1 - c^{-1} t^{-e})
            return self.div_binomial(1 / c, -e).shift(-e) * (-1 / c)
        if not self.terms:
            return self
        hi = self.max_exp()
        terms = self.terms
        # r satisfies p = r - c * shift(r, e): r_k = p_k + c r_{k-e}.  Walk each
        # residue class mod e, skipping the gaps where the running r is zero.
        classes = {}
        for k in sorted(terms):
            classes.setdefault(k % e, []).append(k)
        quot = {}
        for ks in classes.values():
            idx = 0
            while idx < len(ks):
                k = ks[idx]
                prev = 0
                while True:
                    v = terms.get(k, 0) + c * prev if prev else terms.get(k, 0)
                    if v == 0:
                        break
                    if k > hi - e:
                        raise InexactDivisionError(
                            f"nonzero remainder dividing by (1 - {c}*t^{e})")
                    quot[k] = v
                    prev = v
                    k += e
                # resume at the next term of p in this class
                while idx < len(ks) and ks[idx] <= k:
                    idx += 1
        return QLaurent._raw(quot)

    def divexact(self, other):
        """Exact quotient ``self / other`` for Laurent polynomials."""
        if not isinstance(other, QLaurent):
            return self * (1 / mpq(other) if not isinstance(other, GRat) else other.inverse())
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        ob = other.terms
        if len(ob) == 1:
            (e, c), = ob.items()
            inv = 1 / c if not isinstance(c, GRat) else c.inverse()
            return QLaurent._raw({k - e: v * inv for k, v in self.terms.items()})
        dlo, dhi = other.min_exp(), other.max_exp()
        lead = ob[dhi]
        inv = 1 / lead if not isinstance(lead, GRat) else lead.inverse()
        rem = dict(self.terms)
        quot = {}
        while rem:
            top = max(rem)
            if top - dhi < min(rem) - dlo:
                raise InexactDivisionError("nonzero remainder in exact division")
            k = top - dhi
            qc = rem[top] * inv
            quot[k] = qc
            for e, c in ob.items():
                idx = e + k
                v = rem.get(idx, 0) - qc * c
                if v == 0:
                    rem.pop(idx, None)
                else:
                    rem[idx] = v
        return QLaurent._raw(quot)

    def invert_q(self):
        """Substitute ``t -> 1/t`` (equivalently ``q -> 1/q``)."""
        return QLaurent._raw({-e: c for e, c in self.terms.items()})

    def subs_power(self, k):
        """Substitute ``t -> t**k``."""
        if k == 0:
            raise ValueError("k must be nonzero")
        return QLaurent._raw({e * k: c for e, c in self.terms.items()})

    def __call__(self, t0):
        return self.eval(t0)

    def eval(self, t0):
        """Exact value at a nonzero rational or Gaussian-rational ``t``."""
        if not self.terms:
            return mpq(0)
        if t0 == 0:
            raise ZeroDivisionError("Laurent polynomial evaluated at t = 0")
        total = mpq(0)
        for e, c in self.terms.items():
            total = total + c * cpow(t0, e)
        return total

    def at_one(self):
        """Value at ``t = 1`` (i.e. ``q = 1``)."""
        total = mpq(0)
        for c in self.terms.values():
            total = total + c
        return total

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        return f"QLaurent({self.items()!r})"

    def __str__(self):
        return format_laurent(self)

    def to_terms(self, unit=2):
        """``[(exponent // unit, coefficient), ...]`` sorted ascending."""
        out = []
        for e, c in self.items():
            if e % unit:
                raise ValueError(f"exponent {e} is not a multiple of {unit}")
            out.append((e // unit, c))
        return out

    @classmethod
    def from_terms(cls, terms, unit=2):
        return cls({int(e) * unit: c for e, c in terms})


t = QLaurent.monomial(mpq(1), 1)


def _exp_label(e):
    # exponent of t -> text in q^(1/2) units when possible
    if e % 2 == 0:
        k = e // 2
        if k % 2 == 0:
            return f"q^{k // 2}" if k // 2 != 1 else "q"
        return f"q^({k}/2)"
    return f"q^[{e}/4]"


def format_laurent(p):
    """Canonical text: ascending exponents, ``c·q^(k/2)``; odd ``t`` powers as ``q^[e/4]``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        cs = format_number(c)
        if e == 0:
            body = cs
        elif c == 1:
            body = _exp_label(e)
        elif c == -1:
            body = "-" + _exp_label(e)
        else:
            body = f"{cs}·{_exp_label(e)}"
        parts.append(body)
    out = parts[0]
    for s in parts[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def parse_laurent(text):
    """Inverse of :func:`format_laurent`."""
    text = text.strip()
    if text == "0":
        return QLaurent.zero()
    tokens = []
    sign = 1
    i = 0
    # split on " + " / " - " at top level (no spaces inside terms)
    pieces = text.replace(" - ", " + -").split(" + ")
    for piece in pieces:
        piece = piece.strip()
        sign = 1
        if piece.startswith("-") and not piece.startswith("-("):
            sign = -1
            piece = piece[1:]
        elif piece.startswith("-("):
            sign = -1
            piece = piece[1:]
        if "·" in piece:
            cs, qs = piece.split("·")
            c = parse_number(cs)
        elif piece.startswith("q"):
            c, qs = mpq(1), piece
        else:
            c, qs = parse_number(piece), None
        if qs is None:
            e = 0
        elif qs == "q":
            e = 4
        elif qs.startswith("q^["):
            num, den = qs[3:-1].split("/")
            assert den == "4"
            e = int(num)
        elif qs.startswith("q^("):
            num, den = qs[3:-1].split("/")
            assert den == "2"
            e = 2 * int(num)
        else:
            e = 4 * int(qs[2:])
        tokens.append((e, sign * c))
        i += 1
    out = QLaurent.zero()
    for e, c in tokens:
        out = out + QLaurent.monomial(c, e)
    return out


# --------------------------------------------------------------------------
# monomials, binomials and factored products


class Mono:
    """``coef * t**texp * u**uexp``; ``u`` is the formal perturbation variable."""

    __slots__ = ("coef", "texp", "uexp")

    def __init__(self, coef=1, texp=0, uexp=0):
        if isinstance(coef, int):
            coef = mpq(coef)
        if coef == 0:
            raise ValueError("Mono coefficient must be nonzero")
        self.coef = coef
        self.texp = texp
        self.uexp = uexp

    @classmethod
    def q(cls, quarter_units):
        """``q**(k/4)`` as a Mono (argument counted in quarters)."""
        return cls(1, quarter_units)

    def __repr__(self):
        return f"Mono({self.coef}, {self.texp}, {self.uexp})"

    def __eq__(self, other):
        return (isinstance(other, Mono) and self.coef == other.coef
                and self.texp == other.texp and self.uexp == other.uexp)

    def __hash__(self):
        return hash((self.coef, self.texp, self.uexp))

    def __mul__(self, other):
        if isinstance(other, Mono):
            return Mono(self.coef * other.coef, self.texp + other.texp, self.uexp + other.uexp)
        return Mono(self.coef * other, self.texp, self.uexp)

    __rmul__ = __mul__

    def __neg__(self):
        return Mono(-self.coef, self.texp, self.uexp)

    def inverse(self):
        c = self.coef
        return Mono(c.inverse() if isinstance(c, GRat) else 1 / c, -self.texp, -self.uexp)

    def __truediv__(self, other):
        if isinstance(other, Mono):
            return self * other.inverse()
        return Mono(self.coef / other, self.texp, self.uexp)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        return Mono(cpow(self.coef, n), self.texp * n, self.uexp * n)

    def is_one(self):
        return self.coef == 1 and self.texp == 0 and self.uexp == 0

    def to_laurent(self):
        if self.uexp:
            raise ValueError("Mono depends on the perturbation variable")
        return QLaurent.monomial(self.coef, self.texp)


class Binomial:
    """The factor ``1 - coef * t**texp * u**uexp`` in canonical orientation.

    Canonical binomials have ``(texp, uexp) > (0, 0)`` lexicographically, or
    ``texp == uexp == 0`` (a constant).  The factor is identically zero iff it
    is constant with ``coef == 1``.
    """

    __slots__ = ("coef", "texp", "uexp", "_hash")

    def __init__(self, coef, texp, uexp=0):
        self.coef = coef
        self.texp = texp
        self.uexp = uexp
        self._hash = hash((coef, texp, uexp))

    @property
    def sign(self):
        """``+1``/``-1`` when the coefficient is ``±1`` (the pipeline's case)."""
        if self.coef == 1:
            return 1
        if self.coef == -1:
            return -1
        raise ValueError("binomial coefficient is not a sign")

    @property
    def exp(self):
        return self.texp

    def __repr__(self):
        return f"Binomial({self.coef}, {self.texp}, {self.uexp})"

    def __eq__(self, other):
        return (isinstance(other, Binomial) and self.texp == other.texp
                and self.uexp == other.uexp and self.coef == other.coef)

    def __hash__(self):
        return self._hash

    def is_zero(self):
        return self.texp == 0 and self.uexp == 0 and self.coef == 1

    def is_constant(self):
        return self.texp == 0 and self.uexp == 0

    def value(self):
        return 1 - self.coef

    def to_laurent(self):
        if self.uexp:
            raise ValueError("binomial depends on the perturbation variable")
        return QLaurent({0: mpq(1)}) - QLaurent.monomial(self.coef, self.texp)


def canonical_binomial(m):
    """Split ``1 - m`` into ``(prefactor Mono or None, canonical Binomial)``."""
    if m.texp > 0 or (m.texp == 0 and m.uexp >= 0):
        return None, Binomial(m.coef, m.texp, m.uexp)
    # 1 - m = -m (1 - 1/m)
    inv = m.inverse()
    return -m, Binomial(inv.coef, inv.texp, inv.uexp)


def binomial(sign, exp):
    """``(1 - sign * t**exp)`` for ``exp >= 0`` (sign-based constructor)."""
    if exp < 0:
        raise ValueError("use canonical_binomial for negative exponents")
    return Binomial(mpq(sign), exp)


def binomial_div(p, b):
    """Exact quotient ``p / b`` for a :class:`QLaurent` and a :class:`Binomial`."""
    if b.is_zero():
        raise ZeroDivisionError("binomial is identically zero")
    if b.uexp:
        raise ValueError("binomial depends on the perturbation variable")
    return p.div_binomial(b.coef, b.texp)


class FactorProduct:
    """``scalar * t**tshift * u**ushift * prod(num) / prod(den)``.

    ``num`` and ``den`` are multisets (``Counter``) of canonical
    :class:`Binomial` factors.  Arithmetic never expands anything; call
    :meth:`reduced` to cancel and test for zero.
    """

    __slots__ = ("scalar", "tshift", "ushift", "num", "den")

    def __init__(self, scalar=1, tshift=0, ushift=0, num=None, den=None):
        self.scalar = mpq(scalar) if isinstance(scalar, int) else scalar
        self.tshift = tshift
        self.ushift = ushift
        self.num = Counter(num) if num else Counter()
        self.den = Counter(den) if den else Counter()

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def from_mono(cls, m):
        return cls(m.coef, m.texp, m.uexp)

    @classmethod
    def from_number(cls, c):
        return cls(c)

    def copy(self):
        return FactorProduct(self.scalar, self.tshift, self.ushift, self.num, self.den)

    def __repr__(self):
        return (f"FactorProduct({self.scalar}, t^{self.tshift}, u^{self.ushift}, "
                f"num={dict(self.num)}, den={dict(self.den)})")

    # -- multiplicative structure ---------------------------------------

    def __mul__(self, other):
        if isinstance(other, FactorProduct):
            out = FactorProduct(self.scalar * other.scalar, self.tshift + other.tshift,
                                self.ushift + other.ushift, self.num, self.den)
            out.num.update(other.num)
            out.den.update(other.den)
            return out
        if isinstance(other, Mono):
            return FactorProduct(self.scalar * other.coef, self.tshift + other.texp,
                                 self.ushift + other.uexp, self.num, self.den)
        return FactorProduct(self.scalar * other, self.tshift, self.ushift, self.num, self.den)

    __rmul__ = __mul__

    def inverse(self):
        s = self.scalar
        if s == 0:
            raise ZeroDivisionError("inverse of zero product")
        s = s.inverse() if isinstance(s, GRat) else 1 / s
        return FactorProduct(s, -self.tshift, -self.ushift, self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, FactorProduct):
            return self * other.inverse()
        if isinstance(other, Mono):
            return self * other.inverse()
        return self * (1 / other if not isinstance(other, GRat) else other.inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FactorProduct(cpow(self.scalar, n), self.tshift * n, self.ushift * n)
        for b, k in self.num.items():
            out.num[b] = k * n
        for b, k in self.den.items():
            out.den[b] = k * n
        return out

    def __neg__(self):
        return self * -1

    def times_binomial(self, m, power=1):
        """Multiply by ``(1 - m)**power`` for a :class:`Mono` ``m``."""
        pre, b = canonical_binomial(m)
        out = self.copy()
        if power > 0:
            out.num[b] += power
        elif power < 0:
            out.den[b] += -power
        if pre is not None and power:
            out = out * (pre ** power)
        return out

    # -- cancellation ------------------------------------------------------

    def reduced(self):
        """Cancel common factors, fold constant binomials into the scalar.

        Returns a :class:`FactorProduct` whose scalar is 0 if a vanishing
        factor survives in the numerator; raises :class:`SingularTermError`
        if one survives in the denominator.
        """
        num = Counter()
        den = Counter()
        scalar = self.scalar
        for b, k in self.num.items():
            d = self.den.get(b, 0)
            if k > d:
                num[b] = k - d
        for b, k in self.den.items():
            n = self.num.get(b, 0)
            if k > n:
                den[b] = k - n
        zero_num = False
        for b in [b for b in num if b.is_constant()]:
            k = num.pop(b)
            if b.is_zero():
                zero_num = True
            else:
                scalar = scalar * cpow(b.value(), k)
        for b in [b for b in den if b.is_constant()]:
            k = den.pop(b)
            if b.is_zero():
                raise SingularTermError("vanishing factor in denominator")
            scalar = scalar / cpow(b.value(), k)
        if zero_num or scalar == 0:
            return FactorProduct(0)
        return FactorProduct(scalar, self.tshift, self.ushift, num, den)

    def is_zero(self):
        return self.reduced().scalar == 0

    def depends_on_u(self):
        return bool(self.ushift) or any(b.uexp for b in self.num) or any(b.uexp for b in self.den)

    def numerator_laurent(self):
        """Expand ``scalar * t**tshift * prod(num)`` (no cancellation)."""
        if self.ushift or any(b.uexp for b in self.num):
            raise ValueError("product depends on the perturbation variable")
        p = QLaurent.monomial(self.scalar, self.tshift)
        for b, k in sorted(self.num.items(), key=_bkey):
            for _ in range(k):
                p = p.mul_binomial(b.coef, b.texp)
        return p

    def denominator_laurent(self):
        p = QLaurent.one()
        for b, k in sorted(self.den.items(), key=_bkey):
            for _ in range(k):
                p = p.mul_binomial(b.coef, b.texp)
        return p

    def to_ratfunc(self):
        """Reduce and expand the numerator; raise on a singular denominator."""
        r = self.reduced()
        if r.scalar == 0:
            return RatFunc.zero()
        if r.depends_on_u():
            raise ValueError("product depends on the perturbation variable")
        return RatFunc(r.numerator_laurent(), r.den)

    def to_laurent(self):
        """Expand and divide exactly; raise if the quotient is not a Laurent polynomial."""
        return self.to_ratfunc().to_laurent()

    def value(self):
        """Numeric value when every factor is constant in ``t`` and ``u``."""
        r = self.reduced()
        if r.scalar == 0:
            return mpq(0)
        if r.tshift or r.ushift or r.num or r.den:
            raise ValueError("product is not a pure number")
        return r.scalar


def _bkey(item):
    b = item[0]
    return (b.texp, b.uexp, str(b.coef))


class ZeroResult:
    """Marker returned by :func:`cancel` for an identically zero product."""

    def __repr__(self):
        return "Zero"


ZERO = ZeroResult()


def cancel(p):
    """Cancel a :class:`FactorProduct`.

    Returns :data:`ZERO`, or ``(numerator, denominator)`` as expanded
    :class:`QLaurent` values.  Raises :class:`SingularTermError` if a vanishing
    factor survives in the denominator.
    """
    r = p.reduced()
    if r.scalar == 0:
        return ZERO
    return r.numerator_laurent(), r.denominator_laurent()


# --------------------------------------------------------------------------
# rational functions with factored denominators


class RatFunc:
    """``num / prod(den)`` with ``num`` a :class:`QLaurent` and ``den`` a binomial multiset."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = Counter(den) if den else Counter()

    @classmethod
    def zero(cls):
        return cls(QLaurent.zero())

    @classmethod
    def const(cls, c):
        return cls(QLaurent.const(c))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {dict(self.den)!r})"

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other if isinstance(other, QLaurent) else QLaurent.const(other))
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        den = self.den | other.den
        a = self.num
        for b, k in (den - self.den).items():
            for _ in range(k):
                a = a.mul_binomial(b.coef, b.texp)
        c = other.num
        for b, k in (den - other.den).items():
            for _ in range(k):
                c = c.mul_binomial(b.coef, b.texp)
        return RatFunc(a + c, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den + other.den)
        return RatFunc(self.num * other, self.den)

    __rmul__ = __mul__

    def simplify(self):
        """Divide out every denominator binomial that divides the numerator."""
        num = self.num
        den = Counter()
        for b, k in sorted(self.den.items(), key=_bkey):
            for _ in range(k):
                try:
                    num = num.div_binomial(b.coef, b.texp)
                except InexactDivisionError:
                    den[b] += 1
        return RatFunc(num, den)

    def to_laurent(self):
        num = self.num
        for b, k in sorted(self.den.items(), key=_bkey):
            for _ in range(k):
                num = num.div_binomial(b.coef, b.texp)
        return num

    def denominator_laurent(self):
        p = QLaurent.one()
        for b, k in sorted(self.den.items(), key=_bkey):
            for _ in range(k):
                p = p.mul_binomial(b.coef, b.texp)
        return p

    def equals(self, other):
        """Exact equality as rational functions (cross-multiplication)."""
        if not isinstance(other, RatFunc):
            other = RatFunc(other if isinstance(other, QLaurent) else QLaurent.const(other))
        den = self.den | other.den
        a = self.num
        for b, k in (den - self.den).items():
            for _ in range(k):
                a = a.mul_binomial(b.coef, b.texp)
        c = other.num
        for b, k in (den - other.den).items():
            for _ in range(k):
                c = c.mul_binomial(b.coef, b.texp)
        return a == c

    def eval(self, t0):
        return self.num.eval(t0) / self.denominator_laurent().eval(t0)

    def value(self):
        if self.den:
            raise ValueError("rational function is not constant")
        return self.num.constant_value()


def sum_products(products: Iterable[FactorProduct]) -> RatFunc:
    """Sum of u-free products, accumulated with factored denominators."""
    total = RatFunc.zero()
    for p in products:
        r = p.reduced()
        if r.scalar == 0:
            continue
        total = total + RatFunc(r.numerator_laurent(), r.den)
    return total


# --------------------------------------------------------------------------
# perturbation


class PerturbedValue:
    """Truncated Laurent series in ``eps`` where ``u = 1 + eps``.

    Coefficients are :class:`RatFunc` values in ``t``.  ``val`` is the
    ``eps``-adic valuation of the first stored coefficient; ``coeffs[i]``
    multiplies ``eps**(val + i)``.  Only the ``eps**0`` coefficient of a sum
    that is regular at ``u = 1`` is meaningful, which is what
    :meth:`at_one` returns.
    """

    def __init__(self, val, coeffs, order):
        self.val = val
        self.coeffs = list(coeffs)
        self.order = order  # coefficients known for eps**k with k < order

    @classmethod
    def zero(cls, order):
        return cls(0, [], order)

    @classmethod
    def from_product(cls, p, order):
        """Expand a (possibly singular at ``u=1``) product up to ``eps**(order-1)``."""
        r = p.copy()
        # zero binomials in u: (1 - c t^e u^k) with c t^e == 1 -> eps * unit
        val = 0
        depth = order + sum(r.den.values()) + 1
        series = _Series.const(RatFunc(QLaurent.monomial(r.scalar, r.tshift)), depth)
        # u^ushift
        series = series.mul(_Series.upow(r.ushift, depth))
        for b, k in r.num.items():
            v, s = _binomial_series(b, depth)
            val += v * k
            for _ in range(k):
                series = series.mul(s)
        for b, k in r.den.items():
            v, s = _binomial_series(b, depth)
            if s.coeffs[0].is_zero():
                raise SingularTermError("unexpected zero leading coefficient")
            val -= v * k
            inv = s.inverse()
            for _ in range(k):
                series = series.mul(inv)
        n = order - val
        if n <= 0:
            return cls(val, [], order)
        return cls(val, series.coeffs[:n], order)

    def coeff(self, k):
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc.zero()

    def __add__(self, other):
        lo = min(self.val, other.val)
        hi = self.order
        coeffs = []
        for k in range(lo, hi):
            coeffs.append(self.coeff(k) + other.coeff(k))
        return PerturbedValue(lo, coeffs, min(self.order, other.order))

    def at_one(self):
        """The ``eps**0`` coefficient; raise if a pole survives."""
        for k in range(self.val, 0):
            c = self.coeff(k)
            if not c.simplify().num.is_zero():
                raise SingularTermError("perturbed sum has a pole at u = 1")
        return self.coeff(0)


class _Series:
    """Power series in eps with RatFunc coefficients, truncated at ``n`` terms.

    ``inv0`` is the inverse of the leading coefficient when it is known in
    closed form (binomials and constants), which is all :meth:`inverse` needs.
    """

    def __init__(self, coeffs, n, inv0=None):
        self.coeffs = list(coeffs)[:n]
        while len(self.coeffs) < n:
            self.coeffs.append(RatFunc.zero())
        self.n = n
        self.inv0 = inv0

    @classmethod
    def const(cls, c, n):
        return cls([c], n)

    @classmethod
    def upow(cls, k, n):
        # (1 + eps)^k for any integer k
        return cls([RatFunc.const(_gbinom(k, i)) for i in range(n)], n)

    def mul(self, other):
        n = min(self.n, other.n)
        out = [RatFunc.zero() for _ in range(n)]
        for i in range(n):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _Series(out, n)

    def inverse(self):
        inv0 = self.inv0
        if inv0 is None:
            raise ValueError("leading coefficient has no recorded inverse")
        out = [inv0]
        for k in range(1, self.n):
            acc = RatFunc.zero()
            for j in range(1, k + 1):
                if not self.coeffs[j].is_zero():
                    acc = acc + self.coeffs[j] * out[k - j]
            out.append(-(acc * inv0))
        return _Series(out, self.n)


def _gbinom(k, i):
    # generalized binomial coefficient C(k, i) for integer k
    num = 1
    for j in range(i):
        num *= (k - j)
    return mpq(num, factorial(i))


def _binomial_series(b, n):
    """``(valuation, unit series)`` of ``1 - c t^e (1+eps)^k``."""
    c, e, k = b.coef, b.texp, b.uexp
    if e == 0 and c == 1:
        if k == 0:
            raise SingularTermError("identically zero binomial")
        # 1 - (1+eps)^k = -sum_{i>=1} C(k,i) eps^i
        coeffs = [RatFunc.const(-_gbinom(k, i)) for i in range(1, n + 1)]
        return 1, _Series(coeffs, n, RatFunc.const(mpq(-1, k)))
    base = Binomial(c, e, 0)
    if e == 0:
        lead = RatFunc.const(b.value())
        inv0 = RatFunc.const(1 / b.value())
    else:
        lead = RatFunc(base.to_laurent())
        inv0 = RatFunc(QLaurent.one(), {base: 1})
    coeffs = [lead]
    for i in range(1, n if k else 1):
        coeffs.append(RatFunc(QLaurent.monomial(-c * _gbinom(k, i), e)))
    return 0, _Series(coeffs, n, inv0)


# --------------------------------------------------------------------------
# matrices


class PolyMatrix:
    """Dense square or rectangular matrix of :class:`QLaurent` (or scalar) entries."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_function(cls, n, m, f):
        return cls([[f(i, j) for j in range(m)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def det(self):
        return det(self)


def _cofactor_det(rows, n):
    # Laplace expansion along rows, memoised on the set of used columns
    memo = {}

    def rec(i, cols):
        if i == n:
            return 1
        key = cols
        if key in memo:
            return memo[key]
        total = 0
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            a = rows[i][j]
            # sign from position among the remaining columns
            if _is_nonzero(a):
                sub = rec(i + 1, cols | (1 << j))
                if _is_nonzero(sub):
                    term = a * sub
                    total = term + total if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return rec(0, 0)


def _is_nonzero(x):
    if isinstance(x, QLaurent):
        return not x.is_zero()
    return x != 0


def _bareiss_det(rows, n):
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not _is_nonzero(a[k][k]):
            for i in range(k + 1, n):
                if _is_nonzero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = akk * a[i][j] - aik * a[k][j]
                a[i][j] = _exact_div(v, prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _exact_div(v, d):
    if isinstance(d, int) and d == 1:
        return v
    if isinstance(v, QLaurent):
        return v.divexact(d)
    if isinstance(d, QLaurent):
        return QLaurent.const(v).divexact(d)
    return v / d


# --------------------------------------------------------------------------
# Kronecker substitution: a matrix of rational Laurent polynomials becomes an
# integer matrix at t = 2**K, with K above every coefficient of the result


def _entry_terms(x):
    if isinstance(x, QLaurent):
        return x.terms
    return {0: x} if x != 0 else {}


def _is_rational_entry(x):
    return not isinstance(x, GRat) and not (
        isinstance(x, QLaurent) and any(isinstance(c, GRat) for c in x.terms.values()))


class KroneckerRows:
    """Shared row normalisation for one or more matrices with the same rows.

    Row ``r`` of every matrix is multiplied by ``scale[r] * t**-shift[r]``,
    which makes all entries integer polynomials in ``t``; when every row only
    uses exponents in ``shift[r] + g*Z`` they are packed as polynomials in
    ``t**g``.  ``K`` bounds the
    coefficients of any sum of determinants that takes row ``r`` from one of
    the matrices, for every ``r``.
    """

    def __init__(self, mats):
        n = len(mats[0])
        self.shift, self.scale = [], []
        bound = mpz(1)
        g = 0
        for r in range(n):
            terms = [tm for mat in mats for x in mat[r] for tm in _entry_terms(x).items()]
            if not terms:
                self.shift.append(0)
                self.scale.append(mpz(1))
                continue
            den = mpz(1)
            for _, c in terms:
                den = gmpy2.lcm(den, mpq(c).denominator)
            lo = min(e for e, _ in terms)
            for e, _ in terms:
                g = gcd(g, e - lo)
            self.shift.append(lo)
            self.scale.append(den)
            bound *= sum(abs(mpq(c) * den) for _, c in terms)
        self.K = int(gmpy2.mpz(bound).bit_length()) + 2
        self.g = g or 1
        self.rows = n

    def pack(self, mat):
        K, g = self.K, self.g
        out = []
        for r, row in enumerate(mat):
            lo, sc = self.shift[r], self.scale[r]
            packed = []
            for x in row:
                v = mpz(0)
                for e, c in _entry_terms(x).items():
                    c = mpq(c) * sc
                    v += mpz(c.numerator) << (K * ((e - lo) // g))
                packed.append(v)
            out.append(packed)
        return out

    def unpack(self, v):
        """The Laurent polynomial whose value at ``2**K`` (after undoing the row
        normalisation) is the integer ``v``."""
        K = self.K
        half = mpz(1) << (K - 1)
        full = mpz(1) << K
        mask = full - 1
        den = mpz(1)
        for sc in self.scale:
            den *= sc
        lo = sum(self.shift)
        terms = {}
        e = 0
        v = mpz(v)
        while v:
            d = v & mask
            if d >= half:
                d -= full
            if d:
                terms[self.g * e + lo] = mpq(d, den)
            v = (v - d) >> K
            e += 1
        return QLaurent._raw(terms)


def int_det(rows):
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return mpz(1)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return mpz(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = gmpy2.divexact(akk * ai[j] - aik * ak[j], prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def int_det_leading(A0, A1):
    """Leading term of ``det(A0 + eps*A1)`` for integer matrices.

    Returns ``(k, c)`` with ``det = c*eps**k + O(eps**(k+1))`` where ``k`` is
    the corank of ``A0``; ``c`` depends on ``A0`` and ``A1`` only, so any
    ``eps**2`` part of the entries may be dropped.  Fraction-free elimination
    over ``Z[eps]/(eps**2)`` runs while some pivot has a nonzero constant
    term; the block left over is ``eps*B`` and Sylvester's identity gives
    ``c = det(B) / p**(k-1)`` for the last pivot ``p``.
    """
    n = len(A0)
    a = [[(A0[i][j], A1[i][j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = (mpz(1), mpz(0))
    s = 0
    while s < n:
        piv = next(((i, j) for i in range(s, n) for j in range(s, n) if a[i][j][0]), None)
        if piv is None:
            break
        i, j = piv
        if i != s:
            a[s], a[i] = a[i], a[s]
            sign = -sign
        if j != s:
            for row in a:
                row[s], row[j] = row[j], row[s]
            sign = -sign
        p0, p1 = a[s][s]
        d0, d1 = prev
        for i in range(s + 1, n):
            b0, b1 = a[i][s]
            ai, ak = a[i], a[s]
            for j in range(s + 1, n):
                x0, x1 = ai[j]
                y0, y1 = ak[j]
                v0 = p0 * x0 - b0 * y0
                v1 = p0 * x1 + p1 * x0 - b0 * y1 - b1 * y0
                q0 = gmpy2.divexact(v0, d0)
                ai[j] = (q0, gmpy2.divexact(v1 - q0 * d1, d0))
        prev = (p0, p1)
        s += 1
    k = n - s
    if k == 0:
        return 0, sign * a[n - 1][n - 1][0] if n else mpz(1)
    B = [[a[i][j][1] for j in range(s, n)] for i in range(s, n)]
    c = gmpy2.divexact(int_det(B), prev[0] ** (k - 1))
    return k, sign * c


def _packed_det(rows):
    kr = KroneckerRows([rows])
    return kr.unpack(int_det(kr.pack(rows)))


def det(m):
    """Exact determinant: cofactor expansion up to 4x4, fraction-free elimination above."""
    rows = m.rows if isinstance(m, PolyMatrix) else [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return QLaurent.one()
    if n <= 2 or not _contains_laurent(rows):
        d = _cofactor_det(rows, n) if n <= 4 else _bareiss_det(rows, n)
    elif all(_is_rational_entry(x) for r in rows for x in r):
        return _packed_det(rows)
    else:
        d = _cofactor_det(rows, n) if n <= 4 else _bareiss_det(rows, n)
    if isinstance(d, int):
        d = mpq(d)
    return d


def det_value(rows):
    """Determinant of a matrix of scalars (rationals or Gaussian rationals)."""
    n = len(rows)
    if n == 0:
        return mpq(1)
    if n <= 4:
        d = _cofactor_det(rows, n)
    else:
        # Gaussian elimination over the field
        a = [list(r) for r in rows]
        d = mpq(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return mpq(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                d = -d
            akk = a[k][k]
            d = d * akk
            for i in range(k + 1, n):
                f = a[i][k] / akk
                if f != 0:
                    for j in range(k + 1, n):
                        a[i][j] = a[i][j] - f * a[k][j]
    return mpq(d) if isinstance(d, int) else d


def _contains_laurent(rows):
    return any(isinstance(x, QLaurent) for r in rows for x in r)


def invert_q(p):
    """``t -> 1/t`` on a :class:`QLaurent`."""
    return p.invert_q()


def product(factors, start=None):
    out = start if start is not None else QLaurent.one()
    for f in factors:
        out = out * f
    return out


def binom2(n):
    return comb(n, 2) if n >= 0 else n * (n - 1) // 2


def binom3(n):
    return n * (n - 1) * (n - 2) // 6
