"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget exceeded
(the partial bounds are still written), 4 internal consistency failure.
JSON output writes rationals as ``"p/q"`` strings and sorts keys, so runs
with the same arguments are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import euclid, extremal, growth, randmc, rate
from .errors import BudgetExceededError, InternalError, InvalidInputError
from .young import YoungDiagram, parse_diagram


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, growth.PointSet):
        return growth.point_set_json(x)
    if isinstance(x, YoungDiagram):
        return {"rows": list(x.rows)}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)


def dump_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(v) for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument helpers


def _ints(text):
    return tuple(int(t) for t in text.split(",") if t.strip()) if text else ()


def _read_points(arg) -> growth.PointSet:
    text = sys.stdin.read() if arg == "-" else Path(arg).read_text()
    return growth.parse_point_set(text)


def _query(args):
    return rate.query(args.alpha, args.beta)


def _budget(args):
    return args.budget if args.budget is not None else extremal.default_budget()


def _threads(args):
    return args.threads if args.threads is not None else randmc.default_threads()


def _fractions(text):
    return [rate.as_rational(t) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------------------
# subcommands; each returns the text to emit


def cmd_evolve(args):
    z = parse_diagram(args.zero)
    a = _read_points(args.points)
    final, steps = growth.evolve(z, a, _ints(args.f), _ints(args.g))
    if args.out == "plain":
        return growth.format_point_set(final)
    return dump_json({"final": final, "steps": steps, "full": final.is_full()})


def cmd_span(args):
    z = parse_diagram(args.zero)
    a = _read_points(args.points)
    f, g = _ints(args.f), _ints(args.g)
    if f or g:
        ok = growth.spans_enhanced(z, f, g, a.points)
    else:
        ok = growth.spans(z, a)
    if args.out == "plain":
        return f"{str(ok).lower()}\n"
    return dump_json({"spans": ok})


def cmd_tmax(args):
    z = parse_diagram(args.zero)
    return dump_json({"tmax": growth.tmax_bound(z)})


def _gamma_payload(res: extremal.GammaResult):
    out = {"value": res.value, "witness": res.witness,
           "bounds": {"lower": res.lower_bounds, "upper": res.upper_bound},
           "nodes": res.nodes}
    out.update(res.extra)
    return out


def cmd_gamma(args):
    z = parse_diagram(args.zero)
    return dump_json(_gamma_payload(extremal.gamma(z, _budget(args))))


def cmd_gamma_thin(args):
    z = parse_diagram(args.zero)
    return dump_json(_gamma_payload(extremal.gamma_thin(z, _budget(args))))


def cmd_gamma_bar_thin(args):
    z = parse_diagram(args.zero)
    value, f, g = extremal.gamma_bar_thin(z, _budget(args))
    return dump_json({"value": value, "f": f, "g": g})


def cmd_gamma_bounds(args):
    z = parse_diagram(args.zero)
    rect = _ints(args.rect) or None
    y = parse_diagram(args.y) if args.y else None
    return dump_json(extremal.gamma_bounds(z, rect=rect, y=y, budget=_budget(args)))


def cmd_rho(args):
    a = _read_points(args.points)
    res = rate.rho(_query(args), a)
    return dump_json({"value": res.value, "witness": res.witness_B})


def cmd_rate(args):
    z = parse_diagram(args.zero)
    kw = {"box_pad": args.pad, "budget": _budget(args)}
    if args.grid:
        vals = [Fraction(i, args.grid) for i in range(args.grid + 1)]
        rows = rate.rate_grid(z, vals, vals, **kw)
        return dump_csv(["alpha", "beta", "value"], rows)
    res = rate.rate(z, _query(args), **kw)
    return dump_json({"value": res.value, "exact": res.exact, "witness_A": res.witness_A,
                      "witness_B": res.witness_B, "extra": res.extra})


def cmd_rate_rect(args):
    q = _query(args)
    value = rate.rate_rect_closed(args.a, args.b, q)
    if args.out == "plain":
        return f"{value}\n"
    return dump_json({"value": value, "recursion": rate.rate_rect_recursion(args.a, args.b, q)})


def cmd_rate_bp(args):
    value = rate.rate_bootstrap_diag(args.theta, args.alpha)
    if args.out == "plain":
        return f"{value}\n"
    return dump_json({"value": value})


def cmd_support(args):
    z = parse_diagram(args.zero)
    reg = rate.support_region(z)
    if args.emit_boundary:
        pts = reg.boundary(args.boundary_grid)
        Path(args.emit_boundary).write_text(dump_csv(["alpha", "beta"], pts))
    out = {"cells": [list(c) for c in reg.cells]}
    if args.alpha is not None and args.beta is not None:
        out["margin"] = reg.margin(args.alpha, args.beta)
        out["contains"] = reg.contains(args.alpha, args.beta)
        out["positive"] = reg.interior_contains(args.alpha, args.beta)
    return dump_json(out)


def cmd_euclid(args):
    e = euclid.parse_euclid(args.shape)
    if args.action == "series":
        ns = _ints(args.n) or (1, 2, 3)
        rows = euclid.scaled_gamma_series(e, ns, _budget(args), threads=_threads(args))
        rows = [(n, v, "" if ref is None else ref) for n, v, ref in rows]
        return dump_csv(["n", "value", "reference"], rows)
    q = _query(args)
    return dump_json(euclid.reference_values(e, q))


def cmd_mc_span(args):
    z = parse_diagram(args.zero)
    ps = tuple(float(p) for p in args.p.split(","))
    cfg = randmc.McConfig(z, _query(args), ps, args.reps, args.seed, args.max_cells)
    est = randmc.span_probability(cfg, threads=_threads(args))
    rows = []
    for r in est.rows:
        lo, hi = r.wilson()
        rows.append((r.p, r.n, r.m, r.successes, r.replicates, r.phat, lo, hi))
    if args.out == "csv":
        text = dump_csv(["p", "N", "M", "successes", "replicates", "phat", "wilson_lo", "wilson_hi"], rows)
        if est.slope is not None:
            text += f"# slope={est.slope!r} stderr={est.stderr!r}\n"
        return text
    keys = ["p", "N", "M", "successes", "replicates", "phat", "wilson_lo", "wilson_hi"]
    return dump_json({"rows": [dict(zip(keys, r)) for r in rows], "slope": est.slope,
                      "stderr": est.stderr, "fit": est.extra["fit"]})


def _sample(model, n, seed):
    if model == "rost":
        return randmc.rost_sample(n, seed)
    return randmc.vershik_sample(n, seed)


def cmd_sample_young(args):
    y = _sample(args.model, args.n, args.seed)
    if args.emit_boundary:
        Path(args.emit_boundary).write_text(dump_csv(["x", "y"], randmc.boundary_points(y)))
    return dump_json({"model": args.model, "n": args.n, "seed": args.seed,
                      "width": y.width, "height": y.height, "rows": list(y.rows)})


def cmd_shape_dist(args):
    if args.diagram:
        y = parse_diagram(args.diagram)
    else:
        if args.model is None or args.n is None or args.seed is None:
            raise UsageError("shape-dist needs --diagram or --model/--n/--seed")
        y = _sample(args.model, args.n, args.seed)
    curve = args.curve or args.model
    if curve is None:
        raise UsageError("shape-dist needs --curve")
    d = randmc.shape_distance(y, curve, args.radius, metric=args.metric)
    return dump_json({"curve": curve, "radius": args.radius, "metric": args.metric,
                      "n": y.cardinality(), "distance": d})


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hamgrowth", description="Neighborhood growth on the Hamming plane.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default HG_THREADS or cpu count)")
    p.add_argument("--budget", type=int, default=None, help="search node budget (default HG_BUDGET_NODES)")
    p.add_argument("--output", default=None, help="write the result here instead of stdout")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    def add(name, fn, zero=True, query=False, out=("json",)):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        if zero:
            sp.add_argument("--zero", required=True, help="zero-set, e.g. 3,2,1 or rect:2x3")
        if query:
            sp.add_argument("--alpha", required=True, type=rate.as_rational)
            sp.add_argument("--beta", required=True, type=rate.as_rational)
        sp.add_argument("--out", choices=out, default=out[0])
        return sp

    sp = add("evolve", cmd_evolve, out=("json", "plain"))
    sp.add_argument("--points", required=True, help="point set file or - for stdin")
    sp.add_argument("--f", default="")
    sp.add_argument("--g", default="")
    sp = add("span", cmd_span, out=("json", "plain"))
    sp.add_argument("--points", required=True)
    sp.add_argument("--f", default="")
    sp.add_argument("--g", default="")
    add("tmax", cmd_tmax)
    add("gamma", cmd_gamma)
    add("gamma-thin", cmd_gamma_thin)
    add("gamma-bar-thin", cmd_gamma_bar_thin)
    sp = add("gamma-bounds", cmd_gamma_bounds)
    sp.add_argument("--rect", default="", help="a,b of an inner rectangle")
    sp.add_argument("--y", default=None, help="diagram placed outside the rectangle")
    sp = add("rho", cmd_rho, zero=False, query=True)
    sp.add_argument("--points", required=True)
    sp = sub.add_parser("rate")
    sp.set_defaults(fn=cmd_rate)
    sp.add_argument("--zero", required=True)
    sp.add_argument("--alpha", type=rate.as_rational, default=None)
    sp.add_argument("--beta", type=rate.as_rational, default=None)
    sp.add_argument("--pad", type=int, default=1)
    sp.add_argument("--grid", type=int, default=0, help="emit CSV on the (K+1)^2 grid k/K")
    sp = add("rate-rect", cmd_rate_rect, zero=False, query=True, out=("json", "plain"))
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp = add("rate-bp", cmd_rate_bp, zero=False, out=("json", "plain"))
    sp.add_argument("--theta", type=int, required=True)
    sp.add_argument("--alpha", type=rate.as_rational, required=True)
    sp = add("support", cmd_support)
    sp.add_argument("--alpha", type=rate.as_rational, default=None)
    sp.add_argument("--beta", type=rate.as_rational, default=None)
    sp.add_argument("--emit-boundary", default=None, help="CSV path for the boundary polyline")
    sp.add_argument("--boundary-grid", type=int, default=100)
    sp = sub.add_parser("euclid")
    sp.set_defaults(fn=cmd_euclid)
    sp.add_argument("action", choices=("series", "refs"))
    sp.add_argument("--shape", required=True, help="rect:A,B lshape:A[,W] stairs:X@H,... rost[:R] vershik:R")
    sp.add_argument("--n", default="")
    sp.add_argument("--alpha", type=rate.as_rational, default=Fraction(0))
    sp.add_argument("--beta", type=rate.as_rational, default=Fraction(0))
    sp = add("mc-span", cmd_mc_span, query=True, out=("csv", "json"))
    sp.add_argument("--p", required=True, help="comma-separated decreasing densities")
    sp.add_argument("--reps", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--max-cells", type=int, default=randmc.DEFAULT_MAX_CELLS)
    sp = add("sample-young", cmd_sample_young, zero=False)
    sp.add_argument("--model", choices=("rost", "vershik"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--emit-boundary", default=None)
    sp = add("shape-dist", cmd_shape_dist, zero=False)
    sp.add_argument("--diagram", default=None)
    sp.add_argument("--model", choices=("rost", "vershik"), default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--curve", choices=("rost", "vershik"), default=None)
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--metric", choices=("rotated", "vertical"), default="rotated")
    return p


def _emit(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd is None:
            raise UsageError("a subcommand is required")
        if args.cmd == "rate" and not args.grid and (args.alpha is None or args.beta is None):
            raise UsageError("rate needs --alpha and --beta unless --grid is given")
        _emit(args.fn(args), args.output)
        return 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        sys.stdout.write(dump_json({"error": "budget exceeded", "message": str(exc),
                                    "bounds": exc.bounds}))
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
