"""Command-line entry point.

Machine-first: results are a single JSON object on stdout with the fixed key
order {"result", "certified", "depth", "work_units"}; diagnostics go to
stderr.  Exit codes: 0 certified success, 2 uncertified, 1 error, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, dsl
from .budget import tally
from .core_seq import BinWord, pad
from .dyadic import parse_fraction
from .errors import CantorKitError, UncertifiedError
from .fan import (
    DEFAULT_MAX_DEPTH, DEFAULT_START_DEPTH, bar_fan_modulus, modulus_at_depth,
    uniform_modulus,
)
from .functional_eval import Functional2, SeqFunctional
from .pointwise import build_associate, pointwise_modulus
from .realfn import (
    OpenCover, RealCaps, RealFunction, finite_bound, finite_subcover,
    integrate, positive_lower_bound, supremum_on_unit, uc_certificate,
)
from .suptheorems import (
    WordSet, predicate_bar_bound, supremum, tree_bar_bound,
)
from .ubound import BoundedDomain, bounded_argmax, least_witness_bound, seq_modulus

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _load_program(path: str) -> dsl.DslProgram:
    with open(path, "r", encoding="utf-8") as fh:
        return dsl.parse(fh.read())


def _functional(args) -> Functional2:
    return Functional2.from_dsl(_load_program(args.def_file)[args.name])


def _real(args) -> RealFunction:
    return RealFunction.from_dsl(_load_program(args.def_file)[args.name])


def _caps(args) -> RealCaps:
    return RealCaps(budget=args.budget)


def _emit(payload: dict, certified: bool, depth: int, units: int) -> int:
    body = {
        "result": payload,
        "certified": certified,
        "depth": depth,
        "work_units": units,
    }
    print(json.dumps(body, separators=(",", ":")))
    return 0 if certified else 2


def _cmd_fan(args) -> int:
    phi = _functional(args)
    fr = uniform_modulus(phi, args.m0, args.max_depth, budget=args.budget)
    payload = {
        "modulus": fr.modulus,
        "stabilized_at": fr.stabilized_at,
        "certified": fr.certified,
    }
    return _emit(payload, fr.certified, fr.stabilized_at, args._units())


def _cmd_psfan(args) -> int:
    phi = _functional(args)
    fr = uniform_modulus(phi, args.m0, args.max_depth, budget=args.budget)
    if not fr.certified:
        raise UncertifiedError(
            f"no certified depth for {phi.name!r} by {args.max_depth}"
        )
    m = fr.stabilized_at
    value = bar_fan_modulus(phi, m, budget=args.budget)
    stable = value == bar_fan_modulus(phi, 2 * m, budget=args.budget)
    xi = modulus_at_depth(phi, m, budget=args.budget)
    payload = {
        "value": value,
        "stabilized_at": m,
        "certified": stable,
        "least_modulus": xi,
        "equals_least": value == xi,
    }
    return _emit(payload, stable, m, args._units())


def _cmd_sup(args) -> int:
    phi = _functional(args)
    sup = supremum(phi, args.m0, args.max_depth, budget=args.budget)
    payload = {
        "value": sup.value,
        "witness": str(sup.witness),
        "depth_used": sup.depth_used,
    }
    return _emit(payload, True, sup.depth_used, args._units())


def _cmd_bar(args) -> int:
    tree = WordSet.from_functional(_functional(args))
    bound = tree_bar_bound(tree, args.cap, budget=args.budget)
    payload = {"k": bound.k, "certified": bound.certified}
    return _emit(payload, bound.certified, args.cap, args._units())


def _cmd_qffan(args) -> int:
    h = _functional(args)
    bound = predicate_bar_bound(h, args.cap, args.m0, args.max_depth,
                                budget=args.budget)
    payload = {"k": bound.k, "certified": bound.certified}
    return _emit(payload, bound.certified, args.cap, args._units())


def _cmd_ubp(args) -> int:
    domain = BoundedDomain.parse(args.y)
    if args.op == "theta":
        lam = SeqFunctional.from_dsl(_load_program(args.def_file)[args.name])
        n = seq_modulus(lam, domain, args.k, args.max_depth, budget=args.budget)
        payload = {"modulus": n, "y": str(domain)}
        return _emit(payload, True, args.max_depth, args._units())
    if args.op == "argmax":
        phi = _functional(args)
        value, word = bounded_argmax(lambda k: phi, lambda k: domain, args.k,
                                     args.max_depth, budget=args.budget)
        payload = {"value": value, "witness": list(word), "y": str(domain)}
        return _emit(payload, True, args.max_depth, args._units())
    h = _functional(args)
    bound = least_witness_bound(h, lambda k: domain, args.k, args.cap,
                                budget=args.budget)
    if bound is None:
        return _emit({"bound": None, "y": str(domain)}, False, args.cap,
                     args._units())
    return _emit({"bound": bound, "y": str(domain)}, True, args.cap,
                 args._units())


def _cmd_delta(args) -> int:
    phi = _functional(args)
    point = pad(BinWord.from_string(args.point))
    n = pointwise_modulus(phi, point, args.max_depth, budget=args.budget)
    payload = {"modulus": n, "point": args.point}
    return _emit(payload, n is not None, args.max_depth, args._units())


def _cmd_assoc(args) -> int:
    phi = _functional(args)
    alpha = build_associate(phi, args.max_depth, budget=args.budget)
    payload = {"table": alpha.export(args.export_depth), "depth": args.max_depth}
    return _emit(payload, True, args.export_depth, args._units())


def _cmd_ucmod(args) -> int:
    cert = uc_certificate(_real(args), args.k, _caps(args))
    payload = {
        "n": cert.n,
        "digit_modulus": cert.digit_modulus,
        "grid_depth": cert.grid_depth,
    }
    return _emit(payload, True, cert.grid_depth, args._units())


def _cmd_posbound(args) -> int:
    ret = positive_lower_bound(_real(args), args.grid)
    payload = {"denominator": ret, "bound": f"1/{ret}"}
    return _emit(payload, True, args.grid, args._units())


def _cmd_supreal(args) -> int:
    y, z = supremum_on_unit(_real(args), args.k, _caps(args))
    payload = {"value": str(y), "near_maximizer": str(z)}
    return _emit(payload, True, args.k, args._units())


def _cmd_integrate(args) -> int:
    value = integrate(_real(args), args.k, _caps(args))
    payload = {"value": str(value), "error_exponent": args.k}
    return _emit(payload, True, args.k, args._units())


def _cmd_cover(args) -> int:
    with open(args.cover, "r", encoding="utf-8") as fh:
        pairs = json.load(fh)
    cover = OpenCover.from_pairs(
        [(parse_fraction(c), parse_fraction(d)) for c, d in pairs]
    )
    chosen = finite_subcover(cover, args.resolution, args.ncap)
    payload = {"indices": chosen, "verified_resolution": args.resolution}
    return _emit(payload, True, args.resolution, args._units())


def _cmd_finbound(args) -> int:
    n = finite_bound(_real(args), args.grid)
    return _emit({"bound": n}, True, args.grid, args._units())


def _cmd_check(args) -> int:
    report = checks.check_suite(args.suite, budget=args.budget)
    payload = {
        "checks": [
            {
                "name": e.name,
                "status": e.status,
                "depth": e.depth,
                "detail": e.detail,
                "counterexample": e.counterexample,
            }
            for e in report.entries
        ],
        "passed": report.passed,
        "failed": report.failed,
        "uncertified": report.uncertified,
    }
    return _emit(payload, report.ok, 0, args._units())


def _add_common(p: _Parser, needs_def: bool = True) -> None:
    if needs_def:
        p.add_argument("--def", dest="def_file", required=True, metavar="FILE")
        p.add_argument("--name", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true",
                   help="accepted for compatibility; output is always JSON")


def build_parser() -> _Parser:
    parser = _Parser(prog="cantorkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fan")
    _add_common(p)
    p.add_argument("--m0", type=int, default=DEFAULT_START_DEPTH)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.set_defaults(run=_cmd_fan)

    p = sub.add_parser("psfan")
    _add_common(p)
    p.add_argument("--m0", type=int, default=DEFAULT_START_DEPTH)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.set_defaults(run=_cmd_psfan)

    p = sub.add_parser("sup")
    _add_common(p)
    p.add_argument("--m0", type=int, default=DEFAULT_START_DEPTH)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.set_defaults(run=_cmd_sup)

    p = sub.add_parser("bar")
    _add_common(p)
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(run=_cmd_bar)

    p = sub.add_parser("qffan")
    _add_common(p)
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--m0", type=int, default=DEFAULT_START_DEPTH)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.set_defaults(run=_cmd_qffan)

    p = sub.add_parser("ubp")
    _add_common(p)
    p.add_argument("--op", choices=("theta", "argmax", "usb"), default="theta")
    p.add_argument("--y", default="@1")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--cap", type=int, default=8)
    p.set_defaults(run=_cmd_ubp)

    p = sub.add_parser("delta")
    _add_common(p)
    p.add_argument("--point", required=True, metavar="BITS")
    p.add_argument("--max-depth", type=int, default=10)
    p.set_defaults(run=_cmd_delta)

    p = sub.add_parser("assoc")
    _add_common(p)
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--export-depth", type=int, default=4)
    p.set_defaults(run=_cmd_assoc)

    p = sub.add_parser("ucmod")
    _add_common(p)
    p.add_argument("--k", type=int, default=8)
    p.set_defaults(run=_cmd_ucmod)

    p = sub.add_parser("posbound")
    _add_common(p)
    p.add_argument("--grid", type=int, default=8)
    p.set_defaults(run=_cmd_posbound)

    p = sub.add_parser("supreal")
    _add_common(p)
    p.add_argument("--k", type=int, default=6)
    p.set_defaults(run=_cmd_supreal)

    p = sub.add_parser("integrate")
    _add_common(p)
    p.add_argument("--k", type=int, default=10)
    p.set_defaults(run=_cmd_integrate)

    p = sub.add_parser("cover")
    _add_common(p, needs_def=False)
    p.add_argument("--cover", required=True, metavar="FILE")
    p.add_argument("--resolution", type=int, default=6)
    p.add_argument("--ncap", type=int, default=16)
    p.set_defaults(run=_cmd_cover)

    p = sub.add_parser("finbound")
    _add_common(p)
    p.add_argument("--grid", type=int, default=8)
    p.set_defaults(run=_cmd_finbound)

    p = sub.add_parser("check")
    _add_common(p, needs_def=False)
    p.add_argument("--suite", default="all")
    p.set_defaults(run=_cmd_check)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    with tally() as t:
        args._units = lambda: t.units
        try:
            return args.run(args)
        except UncertifiedError as exc:
            print(f"uncertified: {exc}", file=sys.stderr)
            print(json.dumps({"result": None, "certified": False,
                              "depth": 0, "work_units": t.units,
                              "error": str(exc)},
                             separators=(",", ":")))
            return 2
        except (CantorKitError, OSError, json.JSONDecodeError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            print(json.dumps({"error": str(exc)}, separators=(",", ":")))
            return 1


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
