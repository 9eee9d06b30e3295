"""Regions, the path bijection and the path-based evaluators of Z(q).

Lattice conventions.  Points of the triangular lattice are written ``(i, j)``
with ``i`` counting steps along the direction at +30 degrees and ``j`` steps
straight up; plane coordinates are ``X = i*sqrt(3)/2``, ``Y = j + i/2``.
The unit triangles are

    L(i, j) = {(i, j), (i+1, j), (i, j+1)}
    R(i, j) = {(i+1, j-1), (i+1, j), (i, j)}

A path point ``(x, y)`` of the square lattice stands for the edge from
``(x, y + oy)`` to ``(x+1, y + oy - 1)`` with ``oy = 1 - b - c - m``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from gmpy2 import mpq

from .exactalg import FactorProduct, Mono, QLaurent, det, RatFunc
from .qcalculus import SYMBOLIC, multi_phi43, poch, pochs, sum_terms

DEFAULT_MAX_TILINGS = 10 ** 6


class RegionError(ValueError):
    """Invalid region; ``constraint`` names the violated condition."""

    def __init__(self, constraint, message):
        super().__init__(message)
        self.constraint = constraint


class MethodPreconditionError(ValueError):
    """The chosen evaluator does not apply to this region."""


class ScaleError(RuntimeError):
    """Brute force refused: too many tilings."""


# --------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Region:
    a: int
    b: int
    c: int
    m: int
    M: int
    N: int

    def __post_init__(self):
        a, b, c, m, M, N = self.a, self.b, self.c, self.m, self.M, self.N
        for name in ("a", "b", "c", "m", "M", "N"):
            if not isinstance(getattr(self, name), int):
                raise RegionError("integrality", f"{name} must be an integer")
        for name in ("a", "b", "c", "m"):
            if getattr(self, name) < 0:
                raise RegionError("nonnegativity", f"{name} must be non-negative")
        if (M - b - c) % 2:
            raise RegionError("parity-M", f"M={M} must have the parity of b+c={b + c}")
        if (N - a - c) % 2:
            raise RegionError("parity-N", f"N={N} must have the parity of a+c={a + c}")
        if abs(M) > b + c:
            raise RegionError("bound-M", f"|M|={abs(M)} exceeds b+c={b + c}")
        if abs(N) > a + c:
            raise RegionError("bound-N", f"|N|={abs(N)} exceeds a+c={a + c}")
        if abs(M + N) > a + b:
            raise RegionError("bound-M+N", f"|M+N|={abs(M + N)} exceeds a+b={a + b}")

    @property
    def A(self):
        return (self.b + self.c + self.M) // 2

    @property
    def B(self):
        return (self.a + self.c + self.N) // 2

    @property
    def C(self):
        return (self.a + self.b - self.M - self.N) // 2

    @property
    def zsh(self):
        """Weight shift ``Z = 2A + C + m - 1``."""
        return 2 * self.A + self.C + self.m - 1

    @property
    def oy(self):
        return 1 - self.b - self.c - self.m

    def mirrored(self):
        return Region(self.a, self.b, self.c, self.m, -self.M, -self.N)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.m, self.M, self.N)

    def as_dict(self):
        return dict(zip("abcm", self.as_tuple()[:4]), M=self.M, N=self.N)


def region_new(a, b, c, m, M, N):
    return Region(a, b, c, m, M, N)


def valid_positions(a, b, c):
    """All ``(M, N)`` giving a valid region with sides ``a, b, c``."""
    out = []
    for M in range(-(b + c), b + c + 1, 2):
        for N in range(-(a + c), a + c + 1, 2):
            if abs(M + N) <= a + b:
                out.append((M, N))
    return out


def region_grid(max_side=3, max_m=3, ms=None):
    """Every valid region with ``a, b, c <= max_side`` and ``m <= max_m``."""
    ms = range(max_m + 1) if ms is None else ms
    for a in range(max_side + 1):
        for b in range(max_side + 1):
            for c in range(max_side + 1):
                for m in ms:
                    for M, N in valid_positions(a, b, c):
                        yield Region(a, b, c, m, M, N)


# --------------------------------------------------------------------------
# path endpoints and weights


def endpoints(r):
    """Start points ``P_1..P_{b+m}`` and end points ``Q_1..Q_{b+m}``."""
    a, b, c, m, A, C = r.a, r.b, r.c, r.m, r.A, r.C
    P = [(j - 1, b - j) for j in range(1, b + 1)]
    P += [(C - b + j - 1, A + b + m - j) for j in range(b + 1, b + m + 1)]
    Q = [(a + j - 1, b + c + m - j) for j in range(1, b + m + 1)]
    return P, Q


def _step(e):
    # (q^(e/2) + q^(-e/2)) / 2 in t = q^(1/4)
    if e == 0:
        return QLaurent.one()
    half = mpq(1, 2)
    return QLaurent({2 * e: half, -2 * e: half})


def step_weight(x, y, zsh):
    """Weight of the horizontal step from ``(x-1, y)`` to ``(x, y)``."""
    if isinstance(zsh, Region):
        zsh = zsh.zsh
    return _step(x + 2 * y - zsh)


def path_weights(P, targets, zsh):
    """``w(P; Q)`` for every ``Q`` in ``targets`` from a single grid sweep."""
    if isinstance(zsh, Region):
        zsh = zsh.zsh
    px, py = P
    live = [Q for Q in targets if Q[0] >= px and Q[1] >= py]
    out = {Q: QLaurent.zero() for Q in targets}
    if not live:
        return [out[Q] for Q in targets]
    X = max(Q[0] for Q in live) - px
    Y = max(Q[1] for Q in live) - py
    steps = {}
    row = [None] * (X + 1)
    grid = []
    for dy in range(Y + 1):
        cur = []
        for dx in range(X + 1):
            if dx == 0 and dy == 0:
                v = QLaurent.one()
            else:
                v = QLaurent.zero()
                if dy:
                    v = v + grid[dy - 1][dx]
                if dx:
                    e = px + dx + 2 * (py + dy) - zsh
                    s = steps.get(e)
                    if s is None:
                        s = steps[e] = _step(e)
                    v = v + cur[dx - 1] * s
            cur.append(v)
        grid.append(cur)
    for Q in live:
        out[Q] = grid[Q[1] - py][Q[0] - px]
    return [out[Q] for Q in targets]


def path_weight(P, Q, zsh):
    """Weighted count of up-right paths from ``P`` to ``Q``."""
    return path_weights(P, [Q], zsh)[0]


def weight_matrix(Ps, Qs, zsh):
    return [path_weights(P, Qs, zsh) for P in Ps]


# --------------------------------------------------------------------------
# brute force: transfer over antidiagonals


def _max_tilings():
    return int(os.environ.get("QHEX_MAX_TILINGS", DEFAULT_MAX_TILINGS))


def _moves(xs, lo, hi):
    """Next positions of ordered paths at ``xs``: each keeps ``x`` or moves to ``x+1``.

    Yields ``(new_positions, horizontal_flags)``; ``lo``/``hi`` bound each new
    position (per rank), and vertex-disjointness is enforced.
    """
    n = len(xs)
    out = []

    def rec(i, acc, flags):
        if i == n:
            out.append((tuple(acc), tuple(flags)))
            return
        x = xs[i]
        for h in (1, 0):
            nx = x + h
            if nx > hi[i] or nx < lo[i]:
                continue
            if acc and acc[-1] >= nx:
                continue
            acc.append(nx)
            flags.append(h)
            rec(i + 1, acc, flags)
            acc.pop()
            flags.pop()

    rec(0, [], [])
    return out


class _Sweep:
    """Antidiagonal sweep shared by counting, weighting and enumeration."""

    def __init__(self, r):
        self.r = r
        P, Q = endpoints(r)
        self.P, self.Q = P, Q
        b, m = r.b, r.m
        self.d0 = b - 1
        self.dh = r.C + r.A + m - 1
        self.d1 = r.a + b + r.c + m - 1
        self.start = tuple(x for x, _ in P[:b])
        self.hole = tuple(x for x, _ in P[b:])
        self.final = tuple(x for x, _ in Q)
        self.maxx = max((x for x, _ in Q), default=0)
        self.maxy = max((y for _, y in Q), default=0)

    def bounds(self, d, n):
        """Per-rank position bounds on antidiagonal ``d`` for ``n`` live paths."""
        if n == len(self.Q):
            hi = [min(qx, d) for qx, _ in self.Q]
            lo = [max(0, d - qy) for _, qy in self.Q]
        else:
            hi = [min(self.maxx, d)] * n
            lo = [max(0, d - self.maxy)] * n
        return lo, hi

    def inject(self, xs, d):
        """Add the paths starting at ``T`` when their diagonal is reached."""
        if d != self.dh or not self.hole:
            return xs
        if set(xs) & set(self.hole):
            return None
        return tuple(sorted(xs + self.hole))

    def initial(self):
        if self.d0 == self.dh:
            return self.inject(self.start, self.d0)
        return self.start


def _transfer(r, zero, one, horiz):
    """Generic sum over families: ``horiz(value, x, y)`` multiplies in a step weight."""
    sw = _Sweep(r)
    if not sw.P:
        return one
    if sw.d0 > sw.d1:
        return one if sw.start == sw.final else zero
    init = sw.initial()
    if init is None:
        return zero
    states = {init: one}
    for d in range(sw.d0, sw.d1):
        nxt = {}
        for xs, v in states.items():
            lo, hi = sw.bounds(d + 1, len(xs))
            for ys, flags in _moves(xs, lo, hi):
                w = v
                for x, h in zip(ys, flags):
                    if h:
                        w = horiz(w, x, d + 1 - x)
                if ys in nxt:
                    nxt[ys] = nxt[ys] + w
                else:
                    nxt[ys] = w
        states = {}
        for xs, v in nxt.items():
            ys = sw.inject(xs, d + 1)
            if ys is not None:
                states[ys] = states.get(ys, zero) + v if ys in states else v
    return states.get(sw.final, zero)


def count_tilings(r):
    """Number of tilings, i.e. ``Z(1)``, by the same transfer sweep."""
    return _transfer(r, 0, 1, lambda v, x, y: v)


def brute_force_Z(r, max_tilings=None, with_count=False):
    """``Z(q)`` summed directly over all non-intersecting path families.

    Step weights ``(q^(e/2) + q^(-e/2))/2`` are carried as packed integer
    polynomials in ``q^(1/2)`` (one big integer per state), with the factor
    ``2**-H`` pulled out since every family has the same number ``H`` of
    horizontal steps.
    """
    cap = _max_tilings() if max_tilings is None else max_tilings
    count = count_tilings(r)
    if count > cap:
        raise ScaleError(f"{count} tilings exceed the cap {cap} (set QHEX_MAX_TILINGS)")
    if count == 0:
        z = QLaurent.zero()
        return (z, 0) if with_count else z
    P, Q = endpoints(r)
    H = sum(x for x, _ in Q) - sum(x for x, _ in P)
    zsh = r.zsh
    E = max(abs(x + 2 * y - zsh) for x in range(0, max(r.a + r.b + r.m, 1) + 1)
            for y in range(0, r.b + r.c + r.m + 1))
    K = (count << H).bit_length() + 1

    def horiz(v, x, y):
        e = x + 2 * y - zsh
        return (v << (K * (E + e))) + (v << (K * (E - e)))

    packed = _transfer(r, 0, 1, horiz)
    mask = (1 << K) - 1
    terms = {}
    k = 0
    while packed:
        c = packed & mask
        if c:
            terms[2 * (k - H * E)] = mpq(c, 1 << H)
        packed >>= K
        k += 1
    z = QLaurent(terms)
    return (z, count) if with_count else z


# --------------------------------------------------------------------------
# determinant evaluators


def lindstrom_Z(r):
    """``det(w(P_j; Q_k))``; equal to ``Z`` when ``m`` is even."""
    if r.m % 2:
        raise MethodPreconditionError("Lindstrom determinant needs m even; use split_Z")
    P, Q = endpoints(r)
    return det(weight_matrix(P, Q, r.zsh))


def crossing_configurations(r):
    """All ``(l, x)`` with ``x`` the crossing distances of the ``b`` bottom paths."""
    b, C, A = r.b, r.C, r.A
    left_max = min(C - 1, r.b + r.c - A - 1)
    right_max = min(A - 1, r.a + b - C - 1)
    for l in range(b + 1):
        for left in combinations(range(left_max + 1), l):
            for right in combinations(range(right_max + 1), b - l):
                # x_l < ... < x_1 and x_{l+1} < ... < x_b
                yield l, tuple(reversed(left)) + right


def split_points(r, l, xs):
    P, Q = endpoints(r)
    b, C, A, m = r.b, r.C, r.A, r.m
    R = []
    for j, x in enumerate(xs, 1):
        if j <= l:
            R.append((C - x - 1, A + x + m))
        else:
            R.append((C + x + m, A - x - 1))
    S = R[:l] + P[b:] + R[l:]
    return P[:b], R, S, Q


def split_Z(r):
    """Sum over the crossings of the line through the side of ``T`` (any ``m``)."""
    zsh = r.zsh
    P, Q = endpoints(r)
    if not P:
        return QLaurent.one()
    total = QLaurent.zero()
    for l, xs in crossing_configurations(r):
        Pb, R, S, Q = split_points(r, l, xs)
        d1 = det(weight_matrix(Pb, R, zsh))
        if not d1:
            continue
        d2 = det(weight_matrix(S, Q, zsh))
        total = total + d1 * d2
    return total


# --------------------------------------------------------------------------
# Schlosser's determinant


def schlosser_det(x1, y1, x2, y2, m, ls, zsh, Q=SYMBOLIC):
    """Both sides of Schlosser's evaluation: (determinant, closed form).

    The determinant is built from :func:`path_weight`; the closed form is a
    :class:`RatFunc` (expand with ``to_laurent``).
    """
    starts = [(x1 + j - 1, y1 + m - j) for j in range(1, m + 1)]
    ends = [(x2 + l, y2 - l) for l in ls]
    lhs = det(weight_matrix(starts, ends, zsh))
    return lhs, schlosser_closed(x1, y1, x2, y2, m, ls, zsh, Q).to_ratfunc()


def schlosser_closed(x1, y1, x2, y2, m, ls, zsh, Q=SYMBOLIC):
    q = Q.q
    Z = zsh
    L = sum(ls)
    X = (-Fraction(3, 2) * comb(m, 3)
         + Fraction(1, 2) * comb(m, 2) * (-3 * x1 + 2 * x2 - 2 * y1 + Z - 1)
         + Fraction(1, 4) * m * (x2 - x1) * (x1 + x2 + 4 * y1 - 2 * Z + 1)
         + Fraction(1, 2) * sum(comb(l, 2) for l in ls)
         + Fraction(1, 2) * L * (x2 + 2 * y1 - Z + 1))
    two = comb(m, 2) - m * (x2 - x1) - L
    out = FactorProduct((-1) ** comb(m, 2) * mpq(2) ** two)
    out = out * Q.qpow(X)
    for i in range(m):
        for j in range(i + 1, m):
            # q^l_j - q^l_i = -q^l_i (1 - q^(l_j - l_i))
            out = out * -(q ** ls[i])
            out = out.times_binomial(q ** (ls[j] - ls[i]))
    for j in range(1, m + 1):
        l = ls[j - 1]
        n1 = x2 + y2 - x1 - y1 - m + j
        n2 = x2 - x1 - j + 1 + l
        d1, d2 = x2 - x1 + l, y2 - y1 - l
        if n1 < 0 or n2 < 0 or d1 < 0 or d2 < 0:
            return FactorProduct(0)
        out = out * poch(q, q, n1) * poch(-(q ** (Z - x2 - y1 - y2 - m + j)), q, n2)
        out = out / (poch(q, q, d1) * poch(q, q, d2))
    return out


# --------------------------------------------------------------------------
# discrete Selberg form


def selberg_Z(r, Q=SYMBOLIC):
    """``Z`` as a multiple basic hypergeometric sum (``m`` even)."""
    if r.m % 2:
        raise MethodPreconditionError("the multiple-sum form needs m even")
    return selberg_value(r, Q).to_laurent()


def selberg_value(r, Q=SYMBOLIC):
    a, b, c, m, M, N = r.as_tuple()
    q = Q.q
    qq = Q.qpow(2)
    qp = Q.qpow
    h = Fraction(1, 2)
    X = (-2 * comb(m, 3) - Fraction(1, 4) * (a - 3 * b + M + N + 4) * comb(m, 2)
         - Fraction(1, 4) * a * b * (2 * c + M - N)
         - (h * b * (a - b) + Fraction(1, 16) * (a - 3 * b + M + N) * (a + b + 4 * c - 3 * M + N + 2)) * m)
    e2 = h * m * (a + b + M + N) + a * b
    if e2.denominator != 1:
        raise ArithmeticError(f"power of 2 is not an integral: {e2}")
    pre = FactorProduct(mpq(1, 2) ** int(e2)) * qp(X)
    for j in range(1, b + 1):
        pre = pre * poch(q, q, a + c + m + j - 1) * poch(q, q, j - 1)
        pre = pre * poch(-qp(h * (-a - b + M - N) + j), q, a)
        pre = pre / (poch(q, q, a + j - 1) * poch(q, q, c + m + j - 1))

    def per_index(j):
        f = pochs([qp(1 - b - c - m), qp(1 + h * (a - b + M + N)), -qp(1 + h * (a - b + M - N))],
                  q, b + j - 1)
        f = f * poch(qq, qq, int(h * (a + c + N)) + j - 1)
        f = f / (poch(qp(1 - b - m), q, j - 1) * poch(qp(2 - 2 * m - b - c + M), qq, j - 1)
                 * poch(qp(a + 1), q, b + j - 1))
        f = f / (poch(q, q, int(h * (a + b + M + N)) + j - 1) * poch(qq, qq, int(h * (b + c - M)) + j - 1))
        return f

    upper = [qp(1 - b - m), qp(a + 1), qp(1 - h * b - h * c + h * M - m),
             -qp(1 - h * b - h * c + h * M - m)]
    lower = [qp(1 - b - c - m), qp(1 + h * a - h * b + h * M + h * N),
             -qp(1 + h * a - h * b + h * M - h * N)]
    pre_num = pre
    if m == 0:
        return pre_num.to_ratfunc()

    def per_index_total(j):
        f = per_index(j)
        return f * pre_num if j == 1 else f

    return multi_phi43(m, upper, lower, q, q, b + m - 1, per_index_total)


# --------------------------------------------------------------------------
# explicit families and tilings


@dataclass
class PathFamily:
    """Vertex-disjoint paths listed by start point order ``P_1..P_{b+m}``."""
    paths: list

    def horizontal_steps(self):
        for path in self.paths:
            for (x0, y0), (x1, y1) in zip(path, path[1:]):
                if x1 == x0 + 1:
                    yield (x1, y1)


@dataclass
class Lozenge:
    kind: str  # "horizontal", "left" or "right"
    triangles: tuple
    height: Fraction = None

    def vertices(self):
        """Lattice vertices of the rhombus in cyclic order."""
        pts = set()
        for tri in self.triangles:
            pts.update(triangle_vertices(tri))
        return _cyclic(sorted(pts))


@dataclass
class Tiling:
    region: Region
    lozenges: list = field(default_factory=list)

    def heights(self):
        return sorted(t.height for t in self.lozenges if t.kind == "horizontal")

    def weight(self):
        w = QLaurent.one()
        for t in self.lozenges:
            if t.kind == "horizontal":
                w = w * _step(int(2 * t.height))
        return w


def triangle_vertices(tri):
    kind, i, j = tri
    if kind == "L":
        return ((i, j), (i + 1, j), (i, j + 1))
    return ((i + 1, j - 1), (i + 1, j), (i, j))


def plane(p):
    """Plane coordinates ``(X, Y)`` with ``X`` in units of ``sqrt(3)/2``."""
    i, j = p
    return (i, j + Fraction(i, 2))


def _cyclic(pts):
    cx = sum(Fraction(plane(p)[0]) for p in pts) / len(pts)
    cy = sum(plane(p)[1] for p in pts) / len(pts)
    import math
    return sorted(pts, key=lambda p: math.atan2(float(plane(p)[1] - cy),
                                                float((plane(p)[0] - cx) * Fraction(3, 4) ** 0)))


def hexagon_vertices(r):
    a, b, c, m = r.a, r.b, r.c, r.m
    return [(0, 0), (a, 0), (a + b + m, -(b + m)), (a + b + m, -b - m - c),
            (b, -b - m - c), (0, -m - c)]


def hole_vertices(r):
    j = r.A - r.b - r.c
    return [(r.C, j), (r.C + r.m, j - r.m), (r.C, j - r.m)]


def _inside(poly, pt):
    # convex polygon in lattice coordinates, counterclockwise or clockwise
    sgn = 0
    n = len(poly)
    for k in range(n):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % n]
        cr = (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0)
        if cr == 0:
            continue
        s = 1 if cr > 0 else -1
        if sgn == 0:
            sgn = s
        elif s != sgn:
            return False
    return True


def _dedupe(poly):
    out = []
    for p in poly:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def region_triangles(r):
    """Unit triangles of the hexagon with the hole removed."""
    hexa = _dedupe(hexagon_vertices(r))
    hole = _dedupe(hole_vertices(r))
    out = set()
    if len(hexa) < 3:
        return out
    imax = r.a + r.b + r.m
    jmin, jmax = -r.b - r.c - r.m, 0
    for i in range(0, imax + 1):
        for j in range(jmin - 1, jmax + 2):
            for kind in ("L", "R"):
                vs = triangle_vertices((kind, i, j))
                cen = (Fraction(sum(v[0] for v in vs), 3), Fraction(sum(v[1] for v in vs), 3))
                if not _inside(hexa, cen):
                    continue
                if len(hole) >= 3 and _inside(hole, cen):
                    continue
                out.add((kind, i, j))
    return out


def family_to_tiling(r, fam):
    """Rebuild the tiling of a path family; raises if the family is not a tiling."""
    oy = r.oy
    zsh = r.zsh
    used = set()
    lozenges = []

    def take(kind, tris, height=None):
        for t in tris:
            if t in used:
                raise ValueError(f"triangle {t} covered twice")
            used.add(t)
        lozenges.append(Lozenge(kind, tris, height))

    for path in fam.paths:
        for (x0, y0), (x1, y1) in zip(path, path[1:]):
            if x1 == x0 + 1:
                j = y1 + oy
                take("horizontal", (("R", x0, j), ("L", x1, j - 1)),
                     Fraction(x1 + 2 * y1 - zsh, 2))
            else:
                j = y0 + oy
                take("left", (("R", x1, j), ("L", x1, j)))
    tris = region_triangles(r)
    if not used <= tris:
        raise ValueError("path lozenge outside the region")
    rest = tris - used
    for t in sorted(rest):
        if t[0] != "L":
            continue
        mate = ("R", t[1], t[2] + 1)
        if mate not in rest:
            raise ValueError(f"triangle {t} cannot be paired")
        take("right", (t, mate))
    if used != tris:
        raise ValueError("uncovered triangles remain")
    return Tiling(r, lozenges)


def enumerate_families(r, limit=None):
    """Path families in deterministic order (horizontal moves tried first)."""
    sw = _Sweep(r)
    if limit is not None and limit <= 0:
        return
    if not sw.P:
        yield PathFamily([])
        return
    init = sw.initial()
    if init is None:
        return
    # each live path: (start index, list of points)
    b = r.b
    start_paths = [[p] for p in sw.P[:b]]
    hole_paths = [[p] for p in sw.P[b:]]

    def live_init():
        paths = [(k, start_paths[k]) for k in range(b)]
        if sw.d0 == sw.dh:
            paths += [(b + k, hole_paths[k]) for k in range(r.m)]
        return sorted(paths, key=lambda kp: kp[1][-1][0])

    produced = 0

    def rec(d, live):
        nonlocal produced
        xs = tuple(p[-1][0] for _, p in live)
        if d == sw.d1:
            if xs == sw.final:
                out = [None] * len(sw.P)
                for k, p in live:
                    out[k] = list(p)
                produced += 1
                yield PathFamily(out)
            return
        lo, hi = sw.bounds(d + 1, len(xs))
        for ys, flags in _moves(xs, lo, hi):
            nlive = [(k, p + [(y, d + 1 - y)]) for (k, p), y in zip(live, ys)]
            if d + 1 == sw.dh and r.m:
                if set(ys) & set(sw.hole):
                    continue
                nlive = sorted(nlive + [(b + k, list(hole_paths[k])) for k in range(r.m)],
                               key=lambda kp: kp[1][-1][0])
            yield from rec(d + 1, nlive)
            if limit is not None and produced >= limit:
                return

    if sw.d0 > sw.d1:
        if sw.start == sw.final:
            yield PathFamily([list(p) for p in start_paths])
        return
    yield from rec(sw.d0, live_init())


def enumerate_tilings(r, limit=None):
    """``(PathFamily, Tiling)`` pairs in deterministic order, at most ``limit``."""
    if limit is not None and limit <= 0:
        return
    for fam in enumerate_families(r, limit):
        yield fam, family_to_tiling(r, fam)


# --------------------------------------------------------------------------
# Lindstrom's lemma, literally


def _all_paths(P, Q):
    (x0, y0), (x1, y1) = P, Q
    if x1 < x0 or y1 < y0:
        return
    def rec(x, y, acc):
        if (x, y) == Q:
            yield list(acc)
            return
        if x < x1:
            acc.append((x + 1, y))
            yield from rec(x + 1, y, acc)
            acc.pop()
        if y < y1:
            acc.append((x, y + 1))
            yield from rec(x, y + 1, acc)
            acc.pop()
    yield from rec(x0, y0, [P])


def _path_w(path, zsh):
    w = QLaurent.one()
    for (x0, y0), (x1, y1) in zip(path, path[1:]):
        if x1 == x0 + 1:
            w = w * _step(x1 + 2 * y1 - zsh)
    return w


def nonintersecting_weight(Ps, Qs, zsh):
    """Total weight of vertex-disjoint families ``P_i -> Q_i`` by exhaustive search."""
    n = len(Ps)
    options = [[(set(p), _path_w(p, zsh)) for p in _all_paths(P, Q)] for P, Q in zip(Ps, Qs)]
    total = QLaurent.zero()

    def rec(i, occupied, w):
        nonlocal total
        if i == n:
            total = total + w
            return
        for pts, pw in options[i]:
            if occupied & pts:
                continue
            rec(i + 1, occupied | pts, w * pw)

    rec(0, frozenset(), QLaurent.one())
    return total


def lindstrom_signed_sum(Ps, Qs, zsh):
    """Signed sum over permutations of non-intersecting family weights."""
    total = QLaurent.zero()
    n = len(Ps)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        w = nonintersecting_weight(Ps, [Qs[k] for k in perm], zsh)
        total = total + (-w if inv % 2 else w)
    return total
