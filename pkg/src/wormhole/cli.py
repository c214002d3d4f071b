"""Command-line interface.

Exit codes: 0 success, 1 parse/validation/argument error, 2 internal contract
violation, 3 a WRT check failed for some r.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .diagram import Diagram, load, pretty
from .engine import bracket
from .errors import (
    BoundaryMismatch,
    DiagramError,
    HasDiskGates,
    InadmissibleTriple,
    NonLaurentResult,
    NotClosed,
    SingularBasis,
    WormholeError,
)
from .qring import RatFn
from .tqft import (
    MarkedSphere,
    basis_for,
    catalan_number,
    d_poly_pretty,
    dim_v,
    gram_det_in_d,
    gram_matrix,
    matrix_to_json,
    morphism_matrix,
)
from .wrt import convergence_check

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_WRT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _colors(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        out = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"malformed color list {text!r}") from None
    if any(c < 0 for c in out):
        raise InputError("colors must be nonnegative")
    return out


def _r_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise InputError(f"malformed r range {text!r}; use a..b") from None
    if a < 3 or b < a:
        raise InputError("r range must satisfy 3 <= a <= b")
    return a, b


def _payload(path: str, value: RatFn, wrt_rows: list | None = None) -> str:
    data = {
        "input": path,
        "invariant": value.to_json(),
        "pretty": value.pretty(),
        "wrt": wrt_rows or [],
    }
    return json.dumps(data, sort_keys=True)


def _closed(d: Diagram):
    if not d.is_closed:
        raise InputError(f"diagram is not closed (bottom {tuple(d.bottom)}, top {tuple(d.top)})")


def cmd_eval(args) -> int:
    d = load(args.file)
    _closed(d)
    value = bracket(d, method="bruteforce" if args.oracle else "transfer", tree=args.tree)
    print(_payload(args.file, value) if args.json else value.pretty())
    return EXIT_OK


def cmd_parse(args) -> int:
    d = load(args.file)
    sys.stdout.write(pretty(d))
    return EXIT_OK


def cmd_dim(args) -> int:
    print(dim_v(MarkedSphere(_colors(args.points))))
    return EXIT_OK


def _print_matrix(entries, as_json: bool, extra: dict | None = None):
    if as_json:
        data = {"entries": matrix_to_json(entries), "pretty": [[v.pretty() for v in row] for row in entries]}
        data.update(extra or {})
        print(json.dumps(data, sort_keys=True))
        return
    for row in entries:
        print("[" + ", ".join(v.pretty() for v in row) + "]")


def cmd_gram(args) -> int:
    if args.n < 1:
        raise InputError("-n must be at least 1")
    g = gram_matrix(args.n)
    extra = {}
    if args.det:
        det = gram_det_in_d(args.n)
        extra = {"det_d": det, "det_pretty": d_poly_pretty(det), "degree": len(det) - 1}
    _print_matrix(g.entries, args.json, extra)
    if args.det and not args.json:
        print(f"det = {d_poly_pretty(det)}")
        print(f"degree {len(det) - 1} in d (n*c(n) = {args.n * catalan_number(args.n)})")
    return EXIT_OK


def cmd_matrix(args) -> int:
    d = load(args.file)
    if args.points is not None and _colors(args.points) != tuple(d.bottom):
        raise BoundaryMismatch(f"--points {args.points} does not match the tangle bottom {tuple(d.bottom)}")
    b1 = basis_for(MarkedSphere(d.bottom), args.basis)
    b2 = basis_for(MarkedSphere(d.top), args.basis)
    m = morphism_matrix(d, b1, b2)
    extra = {}
    trace = None
    if tuple(d.bottom) == tuple(d.top):
        trace = m.trace()
        extra = {"trace": trace.to_json(), "trace_pretty": trace.pretty()}
    _print_matrix(m.entries, args.json, extra)
    if trace is not None and not args.json:
        print(f"trace = {trace.pretty()}")
    return EXIT_OK


def cmd_wrt_check(args) -> int:
    d = load(args.file)
    _closed(d)
    lo, hi = _r_range(args.r_range)
    report = convergence_check(d, lo, hi, args.tol, method=args.method)
    if args.json:
        print(_payload(args.file, bracket(d), report.to_json()))
    else:
        for row in report.rows:
            if row.status == "skip":
                print(f"r={row.r} skip ({row.reason})")
            else:
                print(f"r={row.r} {row.status} lhs={row.lhs:.12g} rhs={row.rhs:.12g} err={row.abs_err:.3g}")
        print(f"threshold: {report.threshold if report.threshold is not None else 'none'}")
    return EXIT_OK if report.ok else EXIT_WRT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wormhole", description="Colored graphs and links in connected sums of S^1 x S^2.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate the invariant of a closed diagram")
    e.add_argument("file")
    e.add_argument("--oracle", action="store_true", help="use the brute-force state sum")
    e.add_argument("--json", action="store_true")
    e.add_argument("--tree", choices=("left", "right"), default="left", help="fusion tree at disk gates")
    e.set_defaults(func=cmd_eval)

    pa = sub.add_parser("parse", help="validate a diagram file and print its canonical form")
    pa.add_argument("file")
    pa.set_defaults(func=cmd_parse)

    dm = sub.add_parser("dim", help="dimension of V(S^2 with colored points)")
    dm.add_argument("--points", required=True, help="comma-separated colors, e.g. 1,1,1,1")
    dm.set_defaults(func=cmd_dim)

    g = sub.add_parser("gram", help="Gram matrix of the Catalan basis on 2n points")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--det", action="store_true", help="also print the determinant as a polynomial in d")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gram)

    m = sub.add_parser("matrix", help="matrix and trace of a tangle")
    m.add_argument("file")
    m.add_argument("--points", help="expected bottom colors, comma-separated")
    m.add_argument("--basis", choices=("auto", "catalan", "tree"), default="auto")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_matrix)

    w = sub.add_parser("wrt-check", help="compare with the surgery formula at roots of unity")
    w.add_argument("file")
    w.add_argument("--r-range", default="5..10", help="inclusive range a..b with a >= 3")
    w.add_argument("--tol", type=float, default=1e-9)
    w.add_argument("--method", choices=("chebyshev", "colored"), default="chebyshev")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_wrt_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, BoundaryMismatch, NotClosed, HasDiskGates, InadmissibleTriple, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonLaurentResult, SingularBasis, WormholeError, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
