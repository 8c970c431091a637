"""Command-line front end.

    qsorep enumerate --n 5 --flavor classical --weight 1,0
    qsorep build --n 3 --kind classical --weight 1 --q 2 --output rep.json
    qsorep verify --input rep.json
    qsorep decompose --n 3 --weight 3/2 --q 2
    qsorep suite

Exit codes: 0 pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .patterns import Flavor, HighestWeight, InvalidWeightError, enumerate_patterns, parse_half_integer
from .qnum import QParam
from .repmatrix import Kind, RepSpec, SignVector, build
from .serialize import read_json, rep_from_json, rep_to_json, write_csv, write_json
from .verify import (
    CapExceededError,
    LeakageError,
    check_relations,
    commutant_dimension,
    decompose_prime,
    identify_blocks,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_TOL = 1e-9


class InputError(ValueError):
    pass


def parse_weight(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        tokens = list(text)
    else:
        tokens = [t for t in str(text).split(",") if t.strip()]
    try:
        return [parse_half_integer(t) for t in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {text!r}: {exc}") from None


def parse_signs(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        tokens = [str(t) for t in text]
    elif "," in str(text) or str(text).strip().lstrip("+-").isdigit():
        tokens = [t.strip() for t in str(text).split(",") if t.strip()]
    else:
        tokens = list(str(text).strip())
    out = []
    for t in tokens:
        if t in ("+", "+1", "1"):
            out.append(1)
        elif t in ("-", "-1"):
            out.append(-1)
        else:
            raise InputError(f"bad sign {t!r} in {text!r}; use +1/-1")
    return out


def default_tol() -> float:
    raw = os.environ.get("QSOREP_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"QSOREP_TOL={raw!r} is not a number") from None


def _flavor_for(kind: Kind) -> Flavor:
    return Flavor.NONCLASSICAL if kind in (Kind.NONCLASSICAL, Kind.ONEDIM) else Flavor.CLASSICAL


def spec_from_args(args) -> RepSpec:
    if args.n is None:
        raise InputError("--n is required")
    kind = Kind.parse(args.kind or args.flavor or "classical")
    n = args.n
    if args.weight is None:
        if kind is not Kind.ONEDIM:
            raise InputError("--weight is required")
        entries = [1] * (n // 2)
    else:
        entries = parse_weight(args.weight)
    signs = None
    if args.signs is not None:
        signs = parse_signs(args.signs)
    if kind is Kind.PRIME:
        evens = list(range(2, n + 1, 2))
        if signs is None:
            signs = [1] * len(evens)
        if len(signs) == len(evens) and len(evens) != n - 1:
            full = {k: 1 for k in range(2, n + 1)}
            full.update(zip(evens, signs))
            signs = [full[k] for k in range(2, n + 1)]
    try:
        weight = HighestWeight(n, tuple(entries), _flavor_for(kind))
        q = 2.0 if args.q is None else float(args.q)
        return RepSpec(weight, QParam(q), kind, SignVector(tuple(signs)) if signs else None)
    except (InvalidWeightError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _emit(obj, output, indent=1):
    if output:
        write_json(output, obj, indent)
    else:
        print(json.dumps(obj, indent=indent))


# -- commands -------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    if args.n is None or args.weight is None:
        raise InputError("--n and --weight are required")
    flavor = Flavor(args.flavor or "classical")
    try:
        w = HighestWeight(args.n, tuple(parse_weight(args.weight)), flavor)
        patterns = enumerate_patterns(w)
    except InvalidWeightError as exc:
        raise InputError(str(exc)) from None
    print(f"dim = {len(patterns)}")
    if args.list:
        for i, p in enumerate(patterns):
            print(f"{i:5d}  {p}")
    if args.output:
        write_json(
            args.output,
            {"n": w.n, "flavor": flavor.value, "weight": w.labels(), "dim": len(patterns),
             "patterns": [[list(r) for r in p.rows] for p in patterns]},
        )
    return EXIT_OK


def cmd_build(args) -> int:
    spec = spec_from_args(args)
    rep = build(spec)
    for note in rep.notes:
        print(f"warning: {note}", file=sys.stderr)
    if args.format == "csv":
        if not args.output:
            raise InputError("--format csv needs --output")
        for path in write_csv(args.output, rep):
            print(path)
    else:
        _emit(rep_to_json(rep), args.output, indent=None)
    print(f"built {spec.kind.value} n={spec.weight.n} m={spec.weight} dim={rep.dim}", file=sys.stderr)
    return EXIT_OK


def _load_or_build(args):
    if args.input:
        try:
            return rep_from_json(read_json(args.input))
        except (OSError, KeyError, ValueError) as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    return build(spec_from_args(args))


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    rep = _load_or_build(args)
    if rep.spec is None:
        raise InputError("matrix file carries no q; cannot check relations")
    report = check_relations(rep, tol)
    out = {"relations": report.to_json(), "dim": rep.dim}
    ok = report.passed
    if args.irreducibility:
        try:
            d = commutant_dimension(rep, cap=args.cap or 200)
            out["commutant_dimension"] = d
            ok = ok and d == 1
        except CapExceededError as exc:
            out["commutant_dimension"] = None
            out["commutant_note"] = str(exc)
    _emit(out, args.output)
    if not report.passed:
        print(f"FAIL relation {report.failures()[0]}: residual {report.residuals[report.failures()[0]]:.3e}",
              file=sys.stderr)
    elif not ok:
        print("FAIL irreducibility: commutant dimension != 1", file=sys.stderr)
    else:
        print(f"PASS max residual {report.max_residual:.3e} < {tol:g}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_decompose(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    args.kind = "prime"
    spec = spec_from_args(args)
    rep = build(spec)
    for note in rep.notes:
        print(f"warning: {note}", file=sys.stderr)
    try:
        report = decompose_prime(rep, tol)
    except LeakageError as exc:
        if exc.report is not None:
            _emit(exc.report.to_json(), args.output)
        print(f"FAIL leakage: {exc}", file=sys.stderr)
        return EXIT_FAIL
    hits = identify_blocks(report)
    out = report.to_json()
    ok = True
    for i, (block, h) in enumerate(zip(report.blocks, hits)):
        out["blocks"][i]["matched_count"] = len(h)
        ok = ok and len(h) == 1
    ok = ok and len({h[0] for h in hits if len(h) == 1}) == len(report.blocks)
    _emit(out, args.output)
    print(
        f"{len(report.blocks)} blocks, dims {[b.dim for b in report.blocks]}, "
        f"leakage {report.invariance_residual:.2e}, {'all matched' if ok else 'MATCH FAILURE'}",
        file=sys.stderr,
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    from .suite import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only)
    if args.output:
        write_json(args.output, {"criteria": [r.to_json() for r in results]})
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"FAIL criterion {failed[0].number}: {failed[0].title}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def _add_rep_flags(p):
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=[k.value for k in Kind] + ["one-dim"])
    p.add_argument("--flavor", choices=[f.value for f in Flavor])
    p.add_argument("--weight", help='comma separated, e.g. "3/2,1/2" or "1.5,0.5"')
    p.add_argument("--signs", help='eps_2..eps_n, e.g. "1,-1,1" or "+-+"')
    p.add_argument("--q", type=float, help="deformation parameter (default 2)")
    p.add_argument("--tol", type=float)
    p.add_argument("--output")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsorep", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with the same keys as the flags")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list Gel'fand-Tsetlin tableaux")
    _add_rep_flags(p)
    p.add_argument("--list", action="store_true", help="print every tableau")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build", help="build and export generator matrices")
    _add_rep_flags(p)
    p.add_argument("--format", choices=["json", "csv"])
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the defining relations")
    _add_rep_flags(p)
    p.add_argument("--input", help="matrix JSON written by `build`")
    p.add_argument("--irreducibility", action="store_true", help="also compute the commutant")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="split the prime representation into blocks")
    _add_rep_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("suite", help="run the acceptance grid")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.add_argument("--output")
    p.set_defaults(func=cmd_suite)
    return parser


def _apply_config(parser, argv):
    """Re-parse with defaults taken from ``--config``; explicit flags win."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        cfg = read_json(args.config)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read config {args.config}: {exc}") from None
    for key, value in cfg.items():
        key = key.replace("-", "_")
        if key == "command":
            continue
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        if getattr(args, key, None) in (None, False):
            setattr(args, key, value)
    return args


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = _apply_config(parser, argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s: %(message)s",
        )
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
