"""Command-line surface: construct lattice files, analyze them, perturb them,
and run the verification suite.  All outputs are UTF-8 JSON with sorted keys.

Exit codes: 0 success, 1 failed checks or failed verification, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constructions import (
    an_dual_frame,
    an_root,
    coxeter_barnes,
    hexagonal,
    hybrid,
    integer_lattice,
    k3_prime,
    lnm,
    planar_wr,
    staircase,
)
from .errors import LatticeError, NotNearlyOrthogonal, VerificationFailed
from .eutaxy import classification_report
from .lattice import lattice_to_json_dict, load_lattice
from .perturb import perturb_block, perturb_general
from .ratlinalg import parse_rational
from .verify import available_suites, run_suite

FAMILIES = (
    "z",
    "hex",
    "lnm",
    "staircase",
    "hybrid",
    "k3prime",
    "an",
    "anstar",
    "coxeter-barnes",
    "planar",
)


def parse_cos_sq_threshold(text: str) -> Fraction:
    if text.strip() == "pi/3":
        return Fraction(1, 4)
    return parse_rational(text)


def _emit(obj: dict, out: str | None) -> None:
    payload = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise ValueError(f"family {args.family!r} requires --{name}")


def _build_family(args):
    fam = args.family
    if fam == "z":
        _need(args, "n")
        return integer_lattice(args.n)
    if fam == "hex":
        return hexagonal()
    if fam == "lnm":
        _need(args, "n", "m")
        return lnm(args.n, args.m)
    if fam == "staircase":
        _need(args, "n")
        return staircase(args.n)
    if fam == "hybrid":
        _need(args, "n", "m")
        return hybrid(args.n, args.m)
    if fam == "k3prime":
        return k3_prime()
    if fam == "an":
        _need(args, "n")
        return an_root(args.n)
    if fam == "anstar":
        _need(args, "n")
        return an_dual_frame(args.n)
    if fam == "coxeter-barnes":
        _need(args, "n", "r")
        return coxeter_barnes(args.n, args.r)
    raise ValueError(f"unknown family {fam!r}")


def cmd_construct(args) -> int:
    if args.family == "planar":
        _need(args, "epsilon", "d")
        result = planar_wr(parse_rational(args.epsilon), args.d)
        _emit(result.to_json_dict(), args.out)
        return 0
    lat = _build_family(args)
    _emit(lattice_to_json_dict(lat), args.out)
    return 0


def cmd_analyze(args) -> int:
    lat = load_lattice(args.file)
    report = classification_report(
        lat,
        search_minimal_bases=not args.no_basis_search,
        max_dim=args.max_dim,
        cos_sq_threshold=parse_cos_sq_threshold(args.theta),
    )
    _emit(report.to_json_dict(), args.out)
    if report.warnings and args.strict:
        return 1
    return 0


def cmd_verify(args) -> int:
    report = run_suite(suite=args.suite, max_n=args.max_n, jobs=args.jobs)
    _emit(report.to_json_dict(), args.out)
    return 0 if report.passed else 1


def cmd_perturb(args) -> int:
    lat = load_lattice(args.file)
    block_mode = args.block is not None or args.cos is not None
    general_mode = args.mode is not None or args.target is not None
    if block_mode == general_mode:
        raise ValueError("use either --block/--cos or --mode/--target")
    try:
        if block_mode:
            if args.block is None or args.cos is None:
                raise ValueError("block mode needs both --block and --cos")
            outcome = perturb_block(lat, args.block, parse_rational(args.cos))
        else:
            if args.mode is None or args.target is None:
                raise ValueError("general mode needs both --mode and --target")
            outcome = perturb_general(
                lat, args.mode, parse_rational(args.target), tol=args.tol
            )
    except (VerificationFailed, NotNearlyOrthogonal) as exc:
        diag = getattr(exc, "diagnostics", {})
        _emit({"error": str(exc), "diagnostics": {k: str(v) for k, v in diag.items()}}, args.out)
        return 1
    _emit(outcome.to_json_dict(), args.out)
    return 0


def cmd_planar(args) -> int:
    result = planar_wr(parse_rational(args.epsilon), args.d)
    _emit(result.to_json_dict(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wrlat",
        description="Exact-arithmetic toolkit for well-rounded and nearly orthogonal lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a lattice (or planar result) as JSON")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--epsilon", help="rational like 1/10 (planar only)")
    p.add_argument("--d", type=int, help="squarefree integer (planar only)")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("analyze", help="full invariant report for a lattice file")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--strict", action="store_true", help="exit 1 when any guard tripped")
    p.add_argument("--max-dim", type=int, default=12)
    p.add_argument("--theta", default="pi/3", help='cos^2 threshold as "p/q", or "pi/3"')
    p.add_argument("--no-basis-search", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="run the claim-verification suite")
    p.add_argument("--suite", choices=available_suites(), default="all")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("perturb", help="density perturbation of a lattice file")
    p.add_argument("file")
    p.add_argument("--block", type=int)
    p.add_argument("--cos")
    p.add_argument("--mode", choices=("mu", "nu"))
    p.add_argument("--target")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_perturb)

    p = sub.add_parser("planar", help="planar well-rounded family (alias of construct planar)")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_planar)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
