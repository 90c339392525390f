"""Command line interface.

Exit codes: 0 success / true, 1 false, 2 input error, 3 refinement guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from ._config import DEFAULT_GUARD, DEFAULT_TOL, settings
from .eberlein import autocorrelate
from .exceptions import HomometryError, RefinementTooLarge, SchemaError
from .fourier import diffraction, verify_homometric
from .limitperiodic import (
    FormalCombSeries,
    pair_with_gaussian,
    pd_enumerate,
    pd_formal_fourier,
    series_partial_sum,
    total_variation,
)
from .measure import (
    MixedMeasure,
    canonicalize,
    comb,
    describe,
    from_dict,
    rat,
    rat_gcd,
    to_dict,
    weight_at,
    window_atoms,
)
from .oracle import bragg_intensity, window_autocorrelation
from .solver import phases_from_dict, solve, table_cells

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
DIGITS = 12


def _read_json(source: str):
    if source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {source}: {exc}") from None


def _read_measure(source: str) -> MixedMeasure:
    return from_dict(_read_json(source))


def _emit_json(obj, out) -> None:
    json.dump(obj, out, sort_keys=True)
    out.write("\n")


def _num(v: float) -> str:
    return f"{v:.{DIGITS}g}"


def _measure_table(name: str, m: MixedMeasure, out) -> None:
    m = canonicalize(m)
    out.write(f"{name}: {describe(m)}\n")
    if m.lebesgue:
        out.write(f"  lebesgue  {_num(m.lebesgue.real)} {_num(m.lebesgue.imag)}\n")
    for c in m.combs:
        out.write(f"  comb spacing {c.spacing} period {c.period}\n")
        for j, w in enumerate(c.weights):
            out.write(f"    {str(c.spacing * j):>10}  {_num(w.real):>16} {_num(w.imag):>16}\n")
    for x, w in m.finite.atoms:
        out.write(f"  atom {str(x):>10}  {_num(w.real):>16} {_num(w.imag):>16}\n")


def _solution_dict(sol, terms: int) -> dict:
    if isinstance(sol, FormalCombSeries):
        return sol.to_dict(terms=terms, digits=DIGITS)
    return {"kind": "measure", "measure": to_dict(sol, DIGITS)}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_diffract(args, out) -> int:
    m = _read_measure(args.measure)
    gamma = autocorrelate(m)
    dif = diffraction(m)
    if args.format == "table":
        _measure_table("autocorrelation", gamma, out)
        _measure_table("diffraction", dif, out)
    else:
        _emit_json({"autocorrelation": to_dict(gamma, DIGITS), "diffraction": to_dict(dif, DIGITS)}, out)
    return EXIT_OK


def cmd_solve(args, out) -> int:
    d = _read_measure(args.diffraction)
    phases = phases_from_dict(_read_json(args.phases))
    sol = solve(d, phases, real_class=not args.complex)
    if args.format == "table":
        if isinstance(sol, FormalCombSeries):
            _measure_table("head", sol.head, out)
            out.write(f"terms: {sol.describe()}\n")
        else:
            _measure_table("solution", sol, out)
    else:
        _emit_json(_solution_dict(sol, args.terms), out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    quarter = Fraction(1, 4)
    rows = []
    for t, e, m in table_cells():
        ws = [weight_at(m, quarter * j).real for j in range(4)]
        ok = diffraction(m) == comb(1)
        rows.append((t, e, ws, ok, m))
    if args.format == "json":
        _emit_json(
            [
                {
                    "t_alpha": str(t),
                    "e": e,
                    "weights": [float(_num(w)) + 0.0 for w in ws],
                    "measure": to_dict(m, DIGITS),
                    "diffraction_is_Z": ok,
                }
                for t, e, ws, ok, m in rows
            ],
            out,
        )
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t_alpha", "e", "a", "b", "c", "d", "diffraction_is_Z"])
        for t, e, ws, ok, _ in rows:
            w.writerow([str(t), e, *(_num(x + 0.0) for x in ws), ok])
    else:
        out.write(f"{'t_alpha':>8} {'e':>3}   (a, b, c, d) on 0, 1/4, 1/2, 3/4      γ̂ = δ_Z\n")
        for t, e, ws, ok, _ in rows:
            cells = ", ".join(f"{x + 0.0:5.2f}" for x in ws)
            out.write(f"{str(t):>8} {e:+3d}   ({cells})   {ok}\n")
    return EXIT_OK


def _floats(text: str):
    return [float(Fraction(t)) for t in text.split(",") if t.strip()]


def cmd_pd(args, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    if args.pd_command == "enumerate":
        if args.lo > args.hi:
            raise SchemaError("--lo must not exceed --hi")
        w.writerow(["k"])
        for k in pd_enumerate(args.lo, args.hi):
            w.writerow([k])
    elif args.pd_command == "tv":
        a, b = rat(args.a), rat(args.b)
        if not a < b or args.nmax < 0:
            raise SchemaError("need a < b and nmax >= 0")
        w.writerow(["eps", "N", "value"])
        for eps in _floats(args.eps):
            if eps < 0:
                raise SchemaError("eps must be >= 0")
            s = pd_formal_fourier(eps)
            for n in range(args.nmax + 1):
                w.writerow([_num(eps), n, _num(total_variation(series_partial_sum(s, n), a, b))])
    elif args.pd_command == "regularize":
        if args.sigma <= 0:
            raise SchemaError("sigma must be positive")
        if args.eps:
            eps_list = _floats(args.eps)
        else:
            eps_list = [2.0**-j for j in range(args.jmax + 1)]
        w.writerow(["eps", "value"])
        for eps in eps_list:
            if eps < 0:
                raise SchemaError("eps must be >= 0")
            v = pair_with_gaussian(pd_formal_fourier(eps), args.center, args.sigma)
            w.writerow([_num(eps), _num(v.real)])
    return EXIT_OK


def _oracle_agrees(m: MixedMeasure, R: int, out) -> bool:
    tol = 5 / R
    gamma = autocorrelate(m)
    g = rat_gcd(*(c.spacing for c in gamma.combs)) or Fraction(1, 4)
    g = max(g, Fraction(1, 64))
    steps = int(5 / g)
    probes = [g * j for j in range(-steps, steps + 1)]
    worst = 0.0
    for est in window_autocorrelation(m, R, probes):
        worst = max(
            worst,
            abs(est.weight - weight_at(gamma, est.position)),
            abs(est.density - gamma.lebesgue),
        )
    dif = diffraction(m)
    gd, idx, _ = window_atoms(dif, -5, 5)
    ks = {gd * int(i) for i in idx} | {Fraction(j, 4) for j in range(-20, 21)}
    for k in sorted(ks):
        worst = max(worst, abs(bragg_intensity(gamma, k, R) - weight_at(dif, k).real))
    out.write(f"oracle R={R}: max deviation {_num(worst)} (tolerance {_num(tol)})\n")
    return worst <= tol


def cmd_verify(args, out) -> int:
    m1 = _read_measure(args.m1)
    m2 = _read_measure(args.m2)
    ok = verify_homometric(m1, m2)
    out.write(f"homometric: {ok}\n")
    if args.oracle is not None:
        if args.oracle < 10:
            raise SchemaError("--oracle R must be >= 10")
        ok = _oracle_agrees(m1, args.oracle, out) and ok
        ok = _oracle_agrees(m2, args.oracle, out) and ok
    return EXIT_OK if ok else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser, default: str) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--csv", dest="format", action="store_const", const="csv")
    g.add_argument("--table", dest="format", action="store_const", const="table")
    p.set_defaults(format=default)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="homometry",
        description="Homometric structures for pure point diffraction on the real line.",
    )
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="weight tolerance (default 1e-9)")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="max atoms per period in refinements")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diffract", help="autocorrelation and diffraction of a measure")
    d.add_argument("measure", help="measure JSON file, '-' for stdin, or inline JSON")
    _add_format(d, "json")
    d.set_defaults(func=cmd_diffract)

    s = sub.add_parser("solve", help="structure from a diffraction and a phase assignment")
    s.add_argument("diffraction")
    s.add_argument("phases")
    s.add_argument("--terms", type=int, default=3, help="series terms to expand in the output")
    s.add_argument("--complex", action="store_true", help="admit the complex solution class")
    _add_format(s, "json")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("table", help="the eight four-periodic solutions for δ_Z")
    _add_format(t, "table")
    t.set_defaults(func=cmd_table)

    pd = sub.add_parser("pd", help="period doubling set and its formal transform (CSV)")
    pds = pd.add_subparsers(dest="pd_command", required=True)
    e = pds.add_parser("enumerate")
    e.add_argument("--lo", type=int, default=0)
    e.add_argument("--hi", type=int, default=10)
    tv = pds.add_parser("tv")
    tv.add_argument("--eps", default="0", help="comma separated list")
    tv.add_argument("--nmax", type=int, default=8)
    tv.add_argument("--a", default="0")
    tv.add_argument("--b", default="1/4")
    r = pds.add_parser("regularize")
    r.add_argument("--eps", default="", help="comma separated list (default 2^-j, j <= jmax)")
    r.add_argument("--jmax", type=int, default=20)
    r.add_argument("--center", type=float, default=0.0)
    r.add_argument("--sigma", type=float, default=1.0)
    pd.set_defaults(func=cmd_pd)

    v = sub.add_parser("verify", help="exit 0 iff two measures are homometric")
    v.add_argument("m1")
    v.add_argument("m2")
    v.add_argument("--oracle", type=int, metavar="R", help="also check the window oracle at radius R")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    buf = io.StringIO()
    try:
        with settings(tol=args.tol, guard=args.guard):
            code = args.func(args, buf)
        out.write(buf.getvalue())
        return code
    except RefinementTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (HomometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
