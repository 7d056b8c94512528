"""Command-line front end.

Subcommands mirror the library surface:

* ``crit find`` / ``crit lift``: leading solutions and adic lifting of a
  potential loaded from JSON;
* ``trace check``: trace-vs-determinant comparison for a Hessian matrix;
* ``qh idempotents``: idempotents of the symmetric sphere algebra;
* ``spectrum enum``: exact action-spectrum enumeration in a window;
* ``scan weyl`` / ``scan nobulk``: the sweep tables.

Exit codes: 0 success, 2 configuration error, 3 mathematical obstruction
(non-Morse seed, obstructed lift, degenerate trace, area violation).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import cliffordtrace, harness
from .critlift import LiftConfig, hensel_lift, leading_solutions
from .errors import (
    AreaError,
    ConfigError,
    DegenerateTraceError,
    ExtensionFieldError,
    NonMorseError,
    NotZeroDimensionalError,
    NovlinkError,
    ObstructedError,
    SpectrumError,
)
from .laurent import LaurentPotential, UnitaryPoint
from .novikov import NovikovSeries, as_fraction
from .spectrum import ModelOrbitSet, SpectrumConfig, enumerate_spectrum

_CONFIG_ERRORS = (ConfigError, json.JSONDecodeError, OSError, KeyError,
                  ValueError)
_MATH_ERRORS = (NonMorseError, ObstructedError, NotZeroDimensionalError,
                DegenerateTraceError, ExtensionFieldError, AreaError,
                SpectrumError)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_crit_find(args) -> int:
    W = LaurentPotential.from_obj(_load_json(args.potential))
    points = leading_solutions(W)
    print(json.dumps({"points": [p.to_obj() for p in points]}, indent=2))
    return 0


def _cmd_crit_lift(args) -> int:
    W = LaurentPotential.from_obj(_load_json(args.potential))
    seed = UnitaryPoint.from_obj(_load_json(args.seed))
    cfg = LiftConfig(target_precision=as_fraction(args.prec),
                     max_steps=args.max_steps)
    cert = hensel_lift(W, seed, cfg)
    print(json.dumps({
        "point": cert.point.to_obj(),
        "hessian_det": cert.hessian_det.to_obj(),
        "det_valuation": str(cert.det_valuation()),
        "morse": cert.morse,
        "reason": cert.reason,
    }, indent=2))
    return 0


def _cmd_trace_check(args) -> int:
    obj = _load_json(args.hessian)
    entries = obj["entries"] if isinstance(obj, dict) else obj
    matrix = [[NovikovSeries.from_obj(e) for e in row] for row in entries]
    alg = cliffordtrace.CliffordAlgebraModel(matrix)
    Z = cliffordtrace.trace_Z(alg)
    from .laurent import det_bareiss
    det = det_bareiss(matrix)
    match = (not Z.is_zero() and not det.is_zero()
             and Z.valuation() == det.valuation()
             and Z.leading_coefficient() == det.leading_coefficient())
    print(f"Z = {Z}")
    print(f"det = {det}")
    if Z.is_zero():
        print("val(Z) = +inf (degenerate)")
        print("leading terms match: no")
        raise DegenerateTraceError("degenerate: not Morse")
    print(f"val(Z) = {Z.valuation()}")
    print(f"leading terms match: {'yes' if match else 'no'}")
    return 0


def _cmd_qh_idempotents(args) -> int:
    from .symprodqh import symk_idempotents
    omega = as_fraction(args.omega)
    idems = symk_idempotents(args.k, omega)
    for j, e in enumerate(idems):
        v = e.valuation()
        print(f"e[{j}] val = {v}  val/k = {v / args.k}")
        for w, c in enumerate(e.coeffs):
            if not c.is_zero():
                print(f"    m{w}: {c}")
    return 0


def _cmd_spectrum_enum(args) -> int:
    values = [as_fraction(v) for v in args.values.split(",") if v.strip()]
    lo_hi = [as_fraction(v) for v in args.window.split(",")]
    if len(lo_hi) != 2:
        raise ConfigError("window must be lo,hi")
    cfg = SpectrumConfig(k=args.k, pi_generator=as_fraction(args.pi),
                         window=(lo_hi[0], lo_hi[1]))
    spec = enumerate_spectrum(ModelOrbitSet(values), cfg)
    print(json.dumps([str(x) for x in spec]))
    return 0


def _cmd_scan_weyl(args) -> int:
    cfg = harness.ScanConfig.from_obj(_load_json(args.config))
    rows = harness.weyl_scan(cfg)
    text = harness.render_rows(rows, harness.WEYL_COLUMNS, cfg.output_format)
    _emit(text, args.out)
    return 0


def _cmd_scan_nobulk(args) -> int:
    rows = harness.nobulk_scan((args.kmin, args.kmax),
                               as_fraction(args.omega))
    text = harness.render_rows(rows, harness.NOBULK_COLUMNS, args.format)
    _emit(text, args.out)
    return 0


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="novlink",
        description="Exact computations over the Novikov field: link "
                    "potentials, adic lifting, Clifford traces, symmetric "
                    "quantum algebras and action spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    crit = sub.add_parser("crit", help="critical points of potentials")
    crit_sub = crit.add_subparsers(dest="subcommand", required=True)
    find = crit_sub.add_parser("find", help="rational leading solutions")
    find.add_argument("--potential", required=True, metavar="W.json")
    find.set_defaults(func=_cmd_crit_find)
    lift = crit_sub.add_parser("lift", help="lift a seed to a critical point")
    lift.add_argument("--potential", required=True, metavar="W.json")
    lift.add_argument("--seed", required=True, metavar="z.json")
    lift.add_argument("--prec", required=True, metavar="p/q")
    lift.add_argument("--max-steps", type=int, default=64)
    lift.set_defaults(func=_cmd_crit_lift)

    trace = sub.add_parser("trace", help="Clifford trace checks")
    trace_sub = trace.add_subparsers(dest="subcommand", required=True)
    check = trace_sub.add_parser("check",
                                 help="compare trace against determinant")
    check.add_argument("--hessian", required=True, metavar="H.json")
    check.set_defaults(func=_cmd_trace_check)

    qh = sub.add_parser("qh", help="symmetric sphere quantum algebra")
    qh_sub = qh.add_subparsers(dest="subcommand", required=True)
    idem = qh_sub.add_parser("idempotents",
                             help="print the k+1 idempotents and valuations")
    idem.add_argument("--k", type=int, required=True)
    idem.add_argument("--omega", required=True, metavar="p/q")
    idem.set_defaults(func=_cmd_qh_idempotents)

    spec = sub.add_parser("spectrum", help="action spectrum tools")
    spec_sub = spec.add_subparsers(dest="subcommand", required=True)
    enum = spec_sub.add_parser("enum", help="enumerate a spectrum window")
    enum.add_argument("--values", required=True,
                      help="comma-separated orbit actions, e.g. 0,1/2")
    enum.add_argument("--k", type=int, required=True)
    enum.add_argument("--pi", required=True, metavar="p/q",
                      help="lattice generator")
    enum.add_argument("--window", required=True, metavar="lo,hi")
    enum.set_defaults(func=_cmd_spectrum_enum)
    # Let values like "-5,5" and "-1/2" pass as arguments, not options.
    enum._negative_number_matcher = re.compile(r"^-\d")

    scan = sub.add_parser("scan", help="sweep drivers")
    scan_sub = scan.add_subparsers(dest="subcommand", required=True)
    weyl = scan_sub.add_parser("weyl", help="chain-link valuation table")
    weyl.add_argument("--config", required=True, metavar="scan.json")
    weyl.add_argument("--out", default=None)
    weyl.set_defaults(func=_cmd_scan_weyl)
    nobulk = scan_sub.add_parser("nobulk",
                                 help="undeformed idempotent valuation table")
    nobulk.add_argument("--kmax", type=int, required=True)
    nobulk.add_argument("--kmin", type=int, default=1)
    nobulk.add_argument("--omega", required=True, metavar="p/q")
    nobulk.add_argument("--format", choices=("csv", "json"), default="csv")
    nobulk.add_argument("--out", default=None)
    nobulk.set_defaults(func=_cmd_scan_nobulk)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _MATH_ERRORS as exc:
        print(f"obstruction: {exc}", file=sys.stderr)
        return 3
    except _CONFIG_ERRORS as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NovlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
