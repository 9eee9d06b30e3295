"""Command line: ``qhex z``, ``qhex verify`` and ``qhex render``.

Exit codes: 0 ok, 1 identity failure or method mismatch, 2 invalid region,
3 method precondition, 4 tiling index out of range.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import suites
from .closed_form import theorem_Z
from .exactalg import QLaurent, format_number, parse_number
from .tilings import (
    MethodPreconditionError,
    RegionError,
    ScaleError,
    brute_force_Z,
    enumerate_tilings,
    hexagon_vertices,
    hole_vertices,
    lindstrom_Z,
    plane,
    region_new,
    selberg_Z,
    split_Z,
)

EXIT_OK, EXIT_FAIL, EXIT_REGION, EXIT_PRECONDITION, EXIT_INDEX = 0, 1, 2, 3, 4

METHODS = {
    "brute": brute_force_Z,
    "lindstrom": lindstrom_Z,
    "split": split_Z,
    "selberg": selberg_Z,
    "closed": theorem_Z,
}


def _region_args(p):
    for name in ("a", "b", "c", "m", "M", "N"):
        p.add_argument(f"--{name}", type=int, required=True)


def _region(args):
    return region_new(args.a, args.b, args.c, args.m, args.M, args.N)


def z_record(r, method, z):
    """The JSON record for one method; exponents are in units of q^(1/2)."""
    return {
        "region": r.as_dict(),
        "method": method,
        "terms": [[e, format_number(c)] for e, c in z.to_terms(2)],
        "count": str(z.at_one()),
    }


def z_from_record(rec):
    """Inverse of :func:`z_record`: the QLaurent stored in a record."""
    return QLaurent.from_terms([(e, parse_number(c)) for e, c in rec["terms"]], 2)


def cmd_z(args):
    r = _region(args)
    names = [args.method] if args.method != "all" else list(METHODS)
    if args.method == "all" and r.m % 2:
        names = ["brute", "split", "closed"]
    results = {}
    for name in names:
        start = time.perf_counter()
        results[name] = METHODS[name](r)
        print(f"{name}: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    if args.json:
        recs = [z_record(r, name, z) for name, z in results.items()]
        print(json.dumps(recs[0] if len(recs) == 1 else recs, indent=None))
    else:
        print(f"region a={r.a} b={r.b} c={r.c} m={r.m} M={r.M} N={r.N}")
        for name, z in results.items():
            print(f"{name}: Z(q) = {z}")
            print(f"{name}: count = {z.at_one()}")
    ref = next(iter(results.values()))
    bad = [name for name, z in results.items() if z != ref]
    if bad:
        print(f"mismatch: {', '.join(bad)} differ from {names[0]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args):
    ok = True
    for check in suites.run(args.suite, max_size=args.max_size, seed=args.seed):
        print(check.line(), flush=True)
        ok = ok and check.ok
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# SVG


UNIT = 30
COLORS = {"horizontal": "#f2c14e", "left": "#5b8e7d", "right": "#bc4b51"}


def _px(p):
    X, Y = plane(p)
    return (UNIT * math.sqrt(3) / 2 * float(X), -UNIT * float(Y))


def _poly(points, **attrs):
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polygon points="{pts}"{extra}/>'


def _fmt_height(h):
    return str(h.numerator) if h.denominator == 1 else f"{h.numerator}/{h.denominator}"


def render_svg(r, tiling=None, heights=False):
    hexagon = [_px(p) for p in hexagon_vertices(r)]
    hole = [_px(p) for p in hole_vertices(r)]
    xs = [x for x, _ in hexagon]
    ys = [y for _, y in hexagon]
    pad = UNIT / 2
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.2f} {y0:.2f} {w:.2f} {h:.2f}" '
           f'width="{w:.0f}" height="{h:.0f}">']
    if tiling is not None:
        for loz in tiling.lozenges:
            pts = [_px(p) for p in loz.vertices()]
            out.append(_poly(pts, fill=COLORS[loz.kind], stroke="#333", stroke_width="1"))
            if heights and loz.kind == "horizontal":
                cx = sum(x for x, _ in pts) / len(pts)
                cy = sum(y for _, y in pts) / len(pts)
                out.append(f'<text x="{cx:.2f}" y="{cy:.2f}" font-size="{UNIT // 3}" '
                           f'text-anchor="middle" dominant-baseline="central">'
                           f'{_fmt_height(loz.height)}</text>')
    out.append(_poly(hexagon, fill="none", stroke="#000", stroke_width="2"))
    if r.m:
        out.append(_poly(hole, fill="#222", stroke="#000", stroke_width="2"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args):
    r = _region(args)
    tiling = None
    if args.tiling_index is not None:
        k = args.tiling_index
        if k < 0:
            print(f"tiling index {k} is negative", file=sys.stderr)
            return EXIT_INDEX
        found = None
        for i, (_, t) in enumerate(enumerate_tilings(r, k + 1)):
            if i == k:
                found = t
        if found is None:
            print(f"tiling index {k} out of range", file=sys.stderr)
            return EXIT_INDEX
        tiling = found
    svg = render_svg(r, tiling, args.heights)
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        with open(args.output, "w") as fh:
            fh.write(svg)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="qhex", description="Weighted lozenge tilings of a "
                                "hexagon with a triangular hole.")
    sub = p.add_subparsers(dest="command", required=True)

    pz = sub.add_parser("z", help="compute Z(q)")
    _region_args(pz)
    pz.add_argument("--method", choices=list(METHODS) + ["all"], default="closed")
    pz.add_argument("--json", action="store_true", help="print a JSON record")
    pz.set_defaults(func=cmd_z)

    pv = sub.add_parser("verify", help="run identity suites")
    pv.add_argument("--suite", choices=list(suites.SUITES) + ["all"], default="all")
    pv.add_argument("--max-size", type=int, default=2,
                    help="largest side and hole size for the cross suite (default 2)")
    pv.add_argument("--seed", type=int, default=0, help="seed for random test points (default 0)")
    pv.set_defaults(func=cmd_verify)

    pr = sub.add_parser("render", help="draw the region or one of its tilings as SVG")
    _region_args(pr)
    pr.add_argument("--tiling-index", type=int, default=None)
    pr.add_argument("--heights", action="store_true", help="label horizontal tiles by height")
    pr.add_argument("-o", "--output", default="-", help="output file (default stdout)")
    pr.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RegionError as e:
        print(f"invalid region [{e.constraint}]: {e}", file=sys.stderr)
        return EXIT_REGION
    except MethodPreconditionError as e:
        print(f"method precondition: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ScaleError as e:
        print(f"too large: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
