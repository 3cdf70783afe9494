"""Command-line front end.

Every subcommand accepts ``--weights`` (a grid file or ``builtin:<id>``,
default ``builtin:Unified1998``) and ``--format text|json``. Exit status is 0
on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import __version__
from .alphabet import Strand
from .codes import (
    CodeParams,
    code_min_distance,
    construct_repetition_code,
    exhaustive_max_code,
    generate_markov_code,
    is_valid_dna_code,
    rate_estimate,
    read_code_file,
)
from .critical import (
    SUPPORT_THRESHOLD,
    TransitionModel,
    classify_rate,
    conditional_model,
    maximize_critical,
)
from .errors import StemcodeError
from .similarity import duplex_energy, stem_distance, stem_similarity
from .weights import builtin_tables, resolve_weights

DEFAULT_WEIGHTS = "builtin:Unified1998"


def _num(v: float) -> str:
    return f"{v:.10g}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _pair_command(fn, name):
    def run(args, w):
        x, y = Strand(args.x), Strand(args.y)
        v = fn(w, x, y)
        if args.format == "json":
            return _dump({"command": name, "weights": w.name, "x": str(x), "y": str(y), "value": v})
        return _num(v)

    return run


def cmd_critical(args, w):
    report = maximize_critical(w, args.tol)
    regime = classify_rate(w, args.distance, report=report) if args.distance is not None else None
    if args.format == "json":
        d = report.to_dict()
        if regime is not None:
            d["distance"] = args.distance
            d["rate_regime"] = regime.value
        return _dump(d)
    text = report.render()
    if regime is not None:
        text += f"\nd={_num(args.distance)}: {regime.value}"
    return text


def tables_report(fmt: str = "text") -> str:
    """Critical distance, forbidden set and regularity for every builtin table."""
    reports = [maximize_critical(w) for w in builtin_tables()]
    if fmt == "json":
        return _dump([r.to_dict() for r in reports])
    lines = [f"{'table':<16} {'T':>7}  {'forbidden':<9} regular"]
    for r in reports:
        reg = "regular" if r.regular else "non-regular"
        lines.append(f"{r.table:<16} {r.t_value:7.4f}  {r.forbidden_label:<9} {reg}")
    return "\n".join(lines)


def cmd_tables(args, w):
    return tables_report(args.format)


def _code_output(args, w, code, extra):
    if args.format == "json":
        d = dict(extra)
        d["codewords"] = [str(x) for x in code]
        d["size"] = len(code)
        return _dump(d)
    header = "\n".join(f"{k}: {v}" for k, v in extra.items())
    return code.to_text(header).rstrip("\n")


def cmd_xr(args, w):
    code = construct_repetition_code(args.n)
    return _code_output(args, w, code, {
        "n": args.n,
        "weights": w.name,
        "min_distance": round(code_min_distance(w, code), 10),
    })


def _params(args) -> CodeParams:
    if (args.D is None) == (args.d is None):
        raise StemcodeError("give exactly one of --D (absolute) or --d (relative distance)")
    D = args.D if args.D is not None else args.d * args.n
    return CodeParams(args.n, D)


def cmd_gen(args, w):
    params = _params(args)
    if args.model == "uniform":
        model = TransitionModel.uniform()
    else:
        report = maximize_critical(w)
        model = conditional_model(report.optimum, threshold=SUPPORT_THRESHOLD)
    code = generate_markov_code(w, model, params, args.trials, args.seed)
    text = _code_output(args, w, code, {
        "n": params.n, "D": params.D, "weights": w.name, "model": args.model,
        "trials": args.trials, "seed": args.seed,
    })
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        return f"wrote {len(code)} codewords to {args.output}"
    return text


def cmd_verify(args, w):
    code = read_code_file(args.code)
    report = is_valid_dna_code(w, code, args.D)
    args._status = 0 if report.valid else 1
    if args.format == "json":
        return _dump({
            "valid": report.valid,
            "size": len(code),
            "min_distance": report.min_distance,
            "closure_violations": report.closure_violations,
            "distance_violations": [
                {"x": str(x), "y": str(y), "distance": d} for x, y, d in report.distance_violations
            ],
        })
    return report.render()


def cmd_search(args, w):
    params = _params(args)
    code, exact = exhaustive_max_code(w, params, limit=args.limit, max_nodes=args.max_nodes)
    return _code_output(args, w, code, {
        "n": params.n, "D": params.D, "weights": w.name, "size": len(code), "exact": exact,
    })


def cmd_rate(args, w):
    v = rate_estimate(args.N, args.n)
    if args.format == "json":
        return _dump({"N": args.N, "n": args.n, "rate": v})
    return _num(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", default=DEFAULT_WEIGHTS,
                        help="weight grid file or builtin:<id> (default: %(default)s)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="stemcode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("sim", stem_similarity, "additive stem similarity S_w(x, y)"),
        ("dist", stem_distance, "stem distance D_w(x, y) = S_w(x, x) - S_w(x, y)"),
        ("energy", duplex_energy, "duplex energy S_w(x, rc(y))"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("x")
        p.add_argument("y")
        p.set_defaults(func=_pair_command(fn, name))

    p = sub.add_parser("critical", parents=[common], help="critical relative distance of a table")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--distance", type=float, default=None,
                   help="also classify this relative distance d")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("tables", parents=[common], help="analyse all builtin tables")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("xr", parents=[common], help="alternating-strand code for odd n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_xr)

    def add_params(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--D", type=float, default=None, help="absolute distance")
        p.add_argument("--d", type=float, default=None, help="relative distance (D = d * n)")

    p = sub.add_parser("gen", parents=[common], help="random Markov-ensemble code")
    add_params(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=("optimum", "uniform"), default="optimum",
                   help="chain from the critical maximizer or the uniform chain")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a code file")
    p.add_argument("code")
    p.add_argument("--D", type=float, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="exhaustive maximum code (small n)")
    add_params(p)
    p.add_argument("--limit", type=int, default=4**6)
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("rate", parents=[common], help="finite-length rate log4(N)/n")
    p.add_argument("N", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_rate)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        w = resolve_weights(args.weights)
        text = args.func(args, w)
    except (StemcodeError, OSError) as e:
        print(f"error: {e}", file=err)
        return 1
    print(text, file=out)
    return getattr(args, "_status", 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
