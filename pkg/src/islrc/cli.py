"""Command-line interface.

Every command prints one JSON report (fixed key order) with the command,
its inputs, the results, the tool version and the elapsed time.  Exit
status: 0 success, 1 refuted claim or failed certificate, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import CodeParams, classify
from .constructions import ConstructionError, Fill, construct1, construct2
from .distance import (
    ENUM_CAP,
    SUBSET_CAP,
    BudgetExceeded,
    ClaimRefuted,
    certify_distance,
    min_distance_enumerate,
    min_distance_subsets,
)
from .finite_field import FieldError, make_field, prime_power
from .gf_matrix import GfMatrix, MatrixFormatError
from .lrc_core import NotStandardFormError, StandardParityCheck, check_islrc
from .puncture_mds import (
    PunctureError,
    deletion_sizes,
    puncture,
    random_deletions,
    deletion_suite,
)
from .repair_sim import campaign

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str, l: int | None) -> StandardParityCheck:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    H = GfMatrix.from_text(text)
    return StandardParityCheck(H, H.rows if l is None else l)


def _witness_text(C: StandardParityCheck, w) -> str | None:
    if w is None:
        return None
    return GfMatrix(C.field, np.asarray(w)[None, :]).to_text()


def _target_field(args):
    p, m = prime_power(args.q)
    return make_field(p, m)


def _fill(args) -> Fill:
    return Fill.random(args.seed) if args.fill_random else Fill.uniform(args.fill)


def _build(args):
    build = construct1 if args.construction == 1 else construct2
    return build(args.p, args.m, field=_target_field(args), fill=_fill(args))


# --- commands: each returns (results, exit code) ---

def cmd_construct(args):
    code = _build(args)
    text = code.header() + "\n" + code.check.H.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    d = code.declared
    results = {
        "construction": code.construction,
        "p": code.p,
        "m": code.m,
        "fill": code.fill.describe(),
        "params": {"n": d.n, "k": d.k, "r": d.r, "t": d.t, "d_claimed": d.d, "q": d.q},
        "output": args.output,
        "certificate": code.certificate.to_dict(),
    }
    return results, EXIT_OK


def cmd_verify(args):
    C = _load(args.matrix, args.l)
    cert = check_islrc(C, args.r, args.t, auto=args.l is None)
    return {"certificate": cert.to_dict()}, EXIT_OK if cert.passed else EXIT_REFUTED


def cmd_distance(args):
    C = _load(args.matrix, None)
    if args.claim is not None:
        try:
            cert = certify_distance(C, args.claim, cap=args.subset_cap, workers=args.workers)
        except ClaimRefuted as e:
            return {
                "claim": args.claim,
                "certified": False,
                "reason": str(e),
                "witness": _witness_text(C, e.witness),
            }, EXIT_REFUTED
        out = cert.to_dict()
        out["witness"] = _witness_text(C, cert.witness)
        return {"claim": args.claim, "certified": True, "certificate": out}, EXIT_OK
    mode = args.mode
    if mode == "auto":
        mode = "enumerate" if C.field.q ** C.k <= args.enum_cap else "subsets"
    if mode == "enumerate":
        cert = min_distance_enumerate(C, cap=args.enum_cap, workers=args.workers)
    else:
        w_max = args.w_max if args.w_max is not None else C.n - C.k + 1
        cert = min_distance_subsets(C, w_max, cap=args.subset_cap, workers=args.workers)
    out = cert.to_dict()
    out["witness"] = _witness_text(C, cert.witness)
    return {"certificate": out}, EXIT_OK


def cmd_bounds(args):
    report = classify(CodeParams(args.n, args.k, args.d, args.r, args.t, args.q))
    return {"bounds": report.to_dict()}, EXIT_OK


def _parse_rows(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad row list {s!r}") from None


def cmd_puncture(args):
    C = _load(args.matrix, args.l)
    if args.rows is not None:
        rep = puncture(C, _parse_rows(args.rows))
        if args.out:
            Path(args.out).write_text(rep.H_sub.to_text())
        res = rep.to_dict()
        res["H_sub"] = rep.H_sub.to_text()
        return {"report": res}, EXIT_OK
    if args.r is None or args.t is None:
        raise UsageError("--suite needs --r and --t")
    d = args.d
    if d is None:
        from .bounds import bound_one_parity_repair

        d = bound_one_parity_repair(C.n, C.k, args.r, args.t)
        certify_distance(C, d, workers=args.workers)
    size1, size2 = deletion_sizes(C, args.r, args.t)
    ch1 = random_deletions(C, size1, args.count, args.seed)
    ch2 = random_deletions(C, size2, args.count, args.seed + 1)
    summary = deletion_suite(C, d, args.r, args.t, ch1, ch2, seed=args.seed, workers=args.workers)
    res = summary.to_dict()
    if not args.verbose:
        res.pop("reports_mds")
        res.pop("reports_almost_mds")
    return {"suite": res}, EXIT_OK if summary.passed else EXIT_REFUTED


def cmd_simulate(args):
    if args.matrix:
        C = _load(args.matrix, args.l)
        cert = None
        if args.r is not None and args.t is not None:
            cert = check_islrc(C, args.r, args.t)
            if not cert.passed:
                return {"certificate": cert.to_dict()}, EXIT_REFUTED
    elif args.construction:
        code = _build(args)
        C, cert = code.check, code.certificate
    else:
        raise UsageError("simulate needs a matrix file or --construction")
    stats = campaign(C, seed=args.seed, trials=args.trials, cert=cert, keep_traces=bool(args.trace),
                     workers=args.workers)
    if args.trace:
        Path(args.trace).write_text("".join(line + "\n" for line in stats.traces))
    ok = stats.succeeded == stats.attempted
    return {"campaign": stats.to_dict()}, EXIT_OK if ok else EXIT_REFUTED


# --- parser ---

def _construction_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("-c", "--construction", type=int, choices=(1, 2), required=required)
    p.add_argument("-p", type=int, default=2, help="field characteristic of the Cayley tables")
    p.add_argument("-m", type=int, default=1, help="field exponent of the Cayley tables")
    p.add_argument("--q", type=int, default=2, help="order of the field the code is defined over")
    p.add_argument("--fill", type=int, default=1, help="nonzero element replacing each 1")
    p.add_argument("--fill-random", action="store_true", help="independent random nonzero fill (uses --seed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="islrc", description="(n,k,r,t) IS-LRC toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--report", help="write the report here instead of stdout")

    p = sub.add_parser("construct", parents=[common], help="build a construction-1/2 parity-check matrix")
    _construction_flags(p, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check locality/availability of P1")
    p.add_argument("matrix")
    p.add_argument("--l", type=int, help="number of P1 rows (default: auto)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    for name in ("distance", "certify"):
        p = sub.add_parser(name, parents=[common], help="exact minimum distance / certify a claim")
        p.add_argument("matrix")
        p.add_argument("--claim", type=int, required=name == "certify")
        p.add_argument("--mode", choices=("auto", "enumerate", "subsets"), default="auto")
        p.add_argument("--w-max", type=int)
        p.add_argument("--enum-cap", type=int, default=ENUM_CAP)
        p.add_argument("--subset-cap", type=int, default=SUBSET_CAP)
        p.set_defaults(func=cmd_distance)

    p = sub.add_parser("bounds", parents=[common], help="evaluate all bounds for (n,k,d,r,t)")
    for name in ("n", "k", "d", "r", "t"):
        p.add_argument(name, type=int)
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("puncture", parents=[common], help="delete P1 rows and covered columns")
    p.add_argument("matrix")
    p.add_argument("--l", type=int)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rows", help="comma-separated P1 row indices")
    g.add_argument("--suite", action="store_true", help="seeded random deletions of both sizes")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int, help="certified distance (default: certify the optimal value)")
    p.add_argument("--out", help="write H_sub here")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("simulate", parents=[common], help="single-erasure repair campaign")
    p.add_argument("matrix", nargs="?")
    _construction_flags(p, required=False)
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--trace", help="per-trial trace log path")
    p.set_defaults(func=cmd_simulate)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "report"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        results, code = args.func(args)
    except MatrixFormatError as e:
        print(f"islrc: {args.matrix}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, FieldError, ConstructionError, NotStandardFormError, PunctureError,
            BudgetExceeded, ValueError, IndexError) as e:
        print(f"islrc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClaimRefuted as e:
        print(f"islrc: {e}", file=sys.stderr)
        return EXIT_REFUTED
    report = {
        "command": args.command,
        "version": __version__,
        "inputs": _inputs(args),
        "results": results,
        "elapsed_seconds": round(time.perf_counter() - start, 3),
    }
    doc = json.dumps(report, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(doc)
    elif not (args.command == "construct" and not args.output):
        sys.stdout.write(doc)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
