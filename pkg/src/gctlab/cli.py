"""Command-line entry point: ``gctlab <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import kronecker, latin, polynomials, tomography
from .errors import ResourceCapError
from .kronecker import kron, kron_rect, obstruction_search, stretch_probe
from .matrices import PRIME_62
from .partitions import parse_partition
from .polynomials import (
    AffineMatrix,
    determinant_sym,
    grenet_matrix,
    hessian,
    mignon_ressayre_certificate,
    permanent_sym,
    rank_at,
    schwartz_zippel_bound,
    verify_representation,
)
from .symfun import pleth

log = logging.getLogger("gctlab")

EXIT_OK, EXIT_DOMAIN, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64

CAPS_ENV = "GCTLAB_CAPS"
CAPS_HELP = f"""\
resource caps can be overridden with {CAPS_ENV}, a comma-separated list of
key=value pairs: classes (max conjugacy classes of S_N, default {kronecker.MAX_CLASSES}),
candidates (obstruction search, default {kronecker.MAX_CANDIDATES}),
terms (symbolic det/per expansion, default {polynomials.MAX_TERMS}),
latin (max Latin square order, default {latin.MAX_ORDER}),
tomo (max d for t and p, default {tomography.MAX_D}).
Example: {CAPS_ENV}=classes=100000,latin=6
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def apply_caps(spec: Optional[str]) -> None:
    if not spec:
        return
    targets = {
        "classes": (kronecker, "MAX_CLASSES"),
        "candidates": (kronecker, "MAX_CANDIDATES"),
        "terms": (polynomials, "MAX_TERMS"),
        "latin": (latin, "MAX_ORDER"),
        "tomo": (tomography, "MAX_D"),
    }
    for item in spec.split(","):
        key, _, value = item.partition("=")
        if key.strip() not in targets:
            raise UsageError(f"unknown cap {key!r} in {CAPS_ENV}")
        module, attr = targets[key.strip()]
        setattr(module, attr, int(value))


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gctlab",
        description="Exact computations around the permanent versus determinant problem.",
        epilog=CAPS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for searches (default 1)")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, description=help_text, epilog=CAPS_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    p = add("kron", "Kronecker coefficient k(lambda, mu, nu): invariants of [lambda]x[mu]x[nu] under S_N.")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)

    p = add("kron-rect", "Rectangular Kronecker coefficient k_n(lambda) = k(lambda, n x d, n x d).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)

    p = add("pleth", "Plethysm coefficient: multiplicity of V_lambda in Sym^d Sym^n C^vars.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--vars", type=int, default=None, help="number of variables (default n^2)")

    p = add("obstruct", "Occurrence-obstruction search: lambda |- dn with k_n(lambda) = 0 < pleth_n(lambda).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strict-shape", action="store_true",
                   help="require length <= m^2+1 and lambda_1 >= |lambda|(1 - m/n)")
    p.add_argument("--limit", type=int, default=None, help="refuse if more candidates than this")
    p.add_argument("--max-length", type=int, default=None, help="extra bound on the number of rows")
    p.add_argument("--min-first", type=int, default=None, help="smallest first part to scan")
    p.add_argument("--max-first", type=int, default=None, help="largest first part to scan")

    p = add("grenet", "Grenet's determinantal representation of per_m, of size 2^m - 1.")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--normalize", action="store_true", help="flip row 0 so that det = per_m exactly")
    p.add_argument("--verify", choices=["symbolic", "modular"], default=None)
    p.add_argument("--trials", type=int, default=10, help="points for modular verification")
    p.add_argument("--emit-matrix", action="store_true", help="include the matrix in JSON output")

    p = add("verify", "Check det(A) = per_n or det_n for a matrix of affine linear forms given as JSON.")
    p.add_argument("--matrix", required=True, help="JSON file {size, entries}")
    p.add_argument("--poly", choices=["per", "det"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["symbolic", "modular"], default="symbolic")
    p.add_argument("--trials", type=int, default=10)

    p = add("mr-bound", "Mignon-Ressayre Hessian certificate: dc(m) >= rank H_per(M) / 2 with per(M) = 0.")
    p.add_argument("--m", type=int, required=True)

    p = add("hessian-rank", "Exact rank of the Hessian of per_n or det_n at a rational matrix.")
    p.add_argument("--poly", choices=["per", "det"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", required=True,
                   help="JSON file: n x n matrix or flat list of n^2 entries (ints or 'p/q' strings)")

    p = add("tomo", "Discrete tomography counts t (3D relations) and p (pyramids) with marginals "
                    "lambda', mu', nu', and the simplex-like test.")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--with-k", action="store_true", help="also report the Kronecker coefficient")

    p = add("latin", "Alon-Tarsi count: column-even minus column-odd Latin squares of order n.")
    p.add_argument("--n", type=int, required=True)

    p = add("stretch", "Bounded stretching probe: least s <= smax with k_n(s*lambda) > 0.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--smax", type=int, default=4)
    return parser


def _read_point(path: str, n: int) -> List[Fraction]:
    with open(path) as fh:
        data = json.load(fh)
    if data and isinstance(data[0], list):
        data = [x for row in data for x in row]
    if len(data) != n * n:
        raise ValueError(f"point has {len(data)} entries, expected {n * n}")
    return [Fraction(x) for x in data]


def _bound_fields(degree: int, trials: int) -> dict:
    per_trial = schwartz_zippel_bound(degree, PRIME_62, 1)
    return {
        "prime": PRIME_62,
        "trials": trials,
        "per_trial_bound": f"{per_trial.numerator}/{per_trial.denominator}",
        "failure_bound": f"{float(schwartz_zippel_bound(degree, PRIME_62, trials)):.3e}",
    }


def run(args: argparse.Namespace) -> dict:
    """Execute a parsed command and return its JSON-ready result."""
    cmd = args.command
    if cmd == "kron":
        return {"lambda": list(args.lam), "mu": list(args.mu), "nu": list(args.nu),
                "kron": kron(args.lam, args.mu, args.nu)}
    if cmd == "kron-rect":
        return {"n": args.n, "lambda": list(args.lam),
                "kron_rect": kron_rect(args.n, args.lam)}
    if cmd == "pleth":
        nvars = args.vars if args.vars is not None else args.n * args.n
        return {"n": args.n, "d": args.d, "lambda": list(args.lam), "vars": nvars,
                "pleth": pleth(args.n, args.d, args.lam, nvars)}
    if cmd == "obstruct":
        reports = obstruction_search(
            args.n, args.d, args.m,
            enforce_shape=args.strict_shape,
            max_length=args.max_length,
            first_part=(args.min_first, args.max_first),
            cap=args.limit if args.limit is not None else kronecker.MAX_CANDIDATES,
            workers=args.threads,
        )
        return {"n": args.n, "d": args.d, "m": args.m, "strict_shape": args.strict_shape,
                "obstructions": [r.to_json() for r in reports]}
    if cmd == "grenet":
        a = grenet_matrix(args.m, normalize=args.normalize)
        out = {"m": args.m, "size": a.size, "normalized": args.normalize}
        if args.verify:
            f = permanent_sym(args.m)
            if not args.normalize and args.m % 2 == 0:
                f = -f
            out["verify"] = args.verify
            out["verified"] = verify_representation(a, f, args.verify, args.trials, args.seed)
            if args.verify == "modular":
                out.update(_bound_fields(a.size, args.trials))
        if args.emit_matrix:
            out["matrix"] = a.to_json()
        return out
    if cmd == "verify":
        with open(args.matrix) as fh:
            a = AffineMatrix.from_json(json.load(fh))
        f = (permanent_sym if args.poly == "per" else determinant_sym)(args.n)
        out = {"size": a.size, "poly": f"{args.poly}_{args.n}", "mode": args.mode,
               "verified": verify_representation(a, f, args.mode, args.trials, args.seed)}
        if args.mode == "modular":
            out.update(_bound_fields(max(a.size, args.n), args.trials))
        return out
    if cmd == "mr-bound":
        return mignon_ressayre_certificate(args.m).to_json()
    if cmd == "hessian-rank":
        f = (permanent_sym if args.poly == "per" else determinant_sym)(args.n)
        point = _read_point(args.point, args.n)
        return {"poly": f"{args.poly}_{args.n}",
                "rank": rank_at(hessian(f, range(args.n * args.n)), point)}
    if cmd == "tomo":
        out = {
            "lambda": list(args.lam), "mu": list(args.mu), "nu": list(args.nu),
            "t": tomography.count_relations_t(args.lam, args.mu, args.nu, workers=args.threads),
            "p": tomography.count_pyramids_p(args.lam, args.mu, args.nu),
            "simplex_like": tomography.is_simplex_like(args.lam, args.mu, args.nu),
        }
        if args.with_k:
            out["k"] = kron(args.lam, args.mu, args.nu)
        return out
    if cmd == "latin":
        return latin.alon_tarsi(args.n, workers=args.threads).to_json()
    if cmd == "stretch":
        res = stretch_probe(args.n, args.lam, args.smax)
        return {"n": args.n, "lambda": list(args.lam), "smax": args.smax, **res.to_json()}
    raise UsageError(f"unknown command {cmd}")


def render_text(cmd: str, result: dict) -> str:
    if cmd == "kron":
        return str(result["kron"])
    if cmd == "kron-rect":
        return str(result["kron_rect"])
    if cmd == "pleth":
        return str(result["pleth"])
    if cmd == "grenet":
        line = f"size {result['size']}"
        if "verified" in result:
            target = f"per_{result['m']}"
            if not result["normalized"] and result["m"] % 2 == 0:
                target = "-" + target
            line += f", det == {target}: {str(result['verified']).lower()}"
            if "failure_bound" in result:
                line += f" (failure probability <= {result['failure_bound']})"
        return line
    if cmd == "obstruct":
        rows = [json.dumps(r, sort_keys=True) for r in result["obstructions"]]
        return "\n".join(rows) if rows else "no obstructions"
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in result.items())


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        apply_caps(os.environ.get(CAPS_ENV))
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"gctlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        result = run(args)
    except ResourceCapError as exc:
        print(f"gctlab: refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"gctlab: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps(result, sort_keys=True, separators=(",", ":")))
    else:
        print(render_text(args.command, result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
