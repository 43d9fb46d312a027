"""Command-line front end.  Every command prints JSON on standard output.

Exit codes: 0 when every requested verification passed, 1 when a
verification failed, 2 for bad input (parse errors, excluded parameters).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .dynamics import QuadMap, detect_cycle, iterate
from .errors import DegenerateParameterError, HeightGuardError, InternalConsistencyError
from .exact import format_rational, parse_rational, rationals_of_height
from .families import FAMILY_ALIASES, extend_family, generate
from .foursquares import SearchConfig
from .periodic import (
    catalog_check,
    poonen_fixed,
    poonen_three_cycle,
    poonen_two_cycle,
    recover_tau,
    square_cycle_search,
    square_three_cycle_map,
    square_two_cycle,
)
from .runlog import default_results_dir, run_search


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def map_arg(text: str) -> QuadMap:
    try:
        return QuadMap.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_orbit(args) -> int:
    f = QuadMap.normal(args.c) if args.c is not None else args.map
    if args.detect_cycle:
        orb = detect_cycle(f, args.x0, args.steps)
        emit({"map": f.to_dict(), **orb.to_dict()})
        return 0
    iterates = [args.x0]
    truncated = False
    for _ in range(args.steps):
        try:
            iterates.append(iterate(f, iterates[-1], 1))
        except HeightGuardError:
            truncated = True
            break
    emit({"map": f.to_dict(), "x0": format_rational(args.x0),
          "iterates": [format_rational(x) for x in iterates], "tail": 0, "period": 0,
          "truncated": truncated})
    return 0


def cmd_family(args) -> int:
    params = [p for p in (args.beta, args.a, args.alpha, args.param) if p is not None]
    if len(params) != 1:
        raise DegenerateParameterError("give exactly one of --beta, --a, --alpha, --param")
    which = FAMILY_ALIASES[args.name]
    w = extend_family(which, params[0], args.extend) if args.extend else generate(which, params[0])
    out = w.to_dict()
    orb = detect_cycle(w.map, w.x0, 8)
    out["periodic"] = {"tail": orb.tail_length, "period": orb.cycle_length}
    out["verified"] = True
    emit(out)
    return 0


def _search_config(args) -> tuple:
    base = {}
    mode = args.mode
    if args.config:
        base = json.loads(Path(args.config).read_text())
        mode = base.pop("mode", mode)
    ys = list(base.get("y_grid", []))
    ys += [format_rational(y) for y in args.y or []]
    if args.y_height:
        ys += [format_rational(y) for y in rationals_of_height(args.y_height, positive_only=True)]
    base["y_grid"] = list(dict.fromkeys(ys))
    for key in ("box", "shards", "workers"):
        if getattr(args, key) is not None:
            base[key] = getattr(args, key)
    if args.no_coprime:
        base["coprime"] = False
    if args.keep_trivial:
        base["keep_trivial"] = True
    if args.keep_c_zero:
        base["keep_c_zero"] = True
    cfg = SearchConfig.from_dict(base)
    if mode == "fixed-y" and not cfg.y_grid:
        raise ValueError("fixed-y mode needs at least one --y or --y-height")
    return cfg, mode


def cmd_search4(args) -> int:
    cfg, mode = _search_config(args)
    stem = "search4-" + ("fixed-y" if mode == "fixed-y" else "M")
    results = Path(args.results) if args.results else default_results_dir() / f"{stem}.jsonl"
    manifest = Path(args.manifest) if args.manifest else results.with_name(results.name + ".manifest.json")
    emit(run_search(cfg, mode, results, manifest))
    return 0


def cmd_periodic(args) -> int:
    sub = args.sub
    if sub == "poonen":
        given = [(k, v) for k, v in (("rho", args.rho), ("sigma", args.sigma), ("tau", args.tau)) if v is not None]
        if len(given) != 1:
            raise DegenerateParameterError("give exactly one of --rho, --sigma, --tau")
        kind, v = given[0]
        cyc = {"rho": poonen_fixed, "sigma": poonen_two_cycle, "tau": poonen_three_cycle}[kind](v)
        emit(cyc.to_dict())
        return 0
    if sub == "two-cycle":
        emit(square_two_cycle(args.m, args.k).to_dict())
        return 0
    if sub == "three-cycle":
        emit(square_three_cycle_map(args.m, args.n, args.r).to_dict())
        return 0
    if sub == "recover-tau":
        if not args.map.is_monic:
            raise ValueError("recover-tau needs a monic map")
        taus = recover_tau(args.map)
        emit({"map": args.map.to_dict(), "taus": [format_rational(t) for t in taus]})
        return 0 if taus else 1
    if sub == "catalog-check":
        report = catalog_check(strict=False)
        emit({"rows": report, "summary": [f"{r['row']} {'PASS' if r['passed'] else 'FAIL'}" for r in report]})
        return 0 if all(r["passed"] for r in report) else 1
    witnesses = square_cycle_search(args.height, args.workers)
    emit({"height": args.height, "witnesses": [w.to_dict() for w in witnesses]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sqorbits", description="Squares in orbits of quadratic maps.")
    ap.add_argument("--version", action="version", version=__version__)
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("orbit", help="iterate a quadratic map")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--c", type=rational_arg, help="normal form x^2 + c")
    g.add_argument("--map", type=map_arg, help='"A,B,C" for A x^2 + B x + C, or "c=<q>"')
    p.add_argument("--x0", type=rational_arg, required=True)
    p.add_argument("--steps", type=int, default=10, help="iterations, or the cycle budget")
    p.add_argument("--detect-cycle", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sp.add_parser("family", help="three consecutive squares from a one-parameter family")
    p.add_argument("name", choices=sorted(FAMILY_ALIASES))
    p.add_argument("--beta", type=rational_arg)
    p.add_argument("--a", type=rational_arg)
    p.add_argument("--alpha", type=rational_arg)
    p.add_argument("--param", type=rational_arg)
    p.add_argument("--extend", type=int, help="use n times the base point on the family's curve")
    p.set_defaults(func=cmd_family)

    p = sp.add_parser("search4", help="search for four consecutive squares")
    p.add_argument("--mode", choices=["fixed-y", "M"], default="fixed-y")
    p.add_argument("--y", type=rational_arg, action="append")
    p.add_argument("--y-height", type=int, help="add every positive y of height <= this")
    p.add_argument("--box", type=int)
    p.add_argument("--no-coprime", action="store_true")
    p.add_argument("--shards", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--keep-trivial", action="store_true")
    p.add_argument("--keep-c-zero", action="store_true")
    p.add_argument("--results", help="JSON-lines results file")
    p.add_argument("--manifest", help="run manifest (default: results file + .manifest.json)")
    p.add_argument("--config", help="JSON file with SearchConfig fields (and optionally mode)")
    p.set_defaults(func=cmd_search4)

    p = sp.add_parser("periodic", help="cycles and cycles of squares")
    psp = p.add_subparsers(dest="sub", required=True)
    q = psp.add_parser("poonen")
    q.add_argument("--rho", type=rational_arg)
    q.add_argument("--sigma", type=rational_arg)
    q.add_argument("--tau", type=rational_arg)
    q = psp.add_parser("two-cycle")
    q.add_argument("--m", type=rational_arg, required=True)
    q.add_argument("--k", type=rational_arg, required=True)
    q = psp.add_parser("three-cycle")
    q.add_argument("--m", type=rational_arg, required=True)
    q.add_argument("--n", type=rational_arg, required=True)
    q.add_argument("--r", type=rational_arg, required=True)
    q = psp.add_parser("recover-tau")
    q.add_argument("--map", type=map_arg, required=True)
    psp.add_parser("catalog-check")
    q = psp.add_parser("search")
    q.add_argument("--height", type=int, required=True)
    q.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_periodic)
    return ap


_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def _glue_negatives(argv):
    # argparse takes "-1/2" for an option flag; bind it to the preceding option instead
    out = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negatives(argv))
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
