"""Command-line interface.

Every command prints one JSON document on stdout (``--pretty`` indents it).
Exit codes: 0 success or "true", 1 "false" (``eq``, ``oracle`` disagreement,
impossible circuits, contradictory networks, failed axioms), 2 malformed input
or mixed fields, 3 brute-force budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .affrel import AffineRelation
from .axioms import run_suite
from .diagram import Diagram, interpret
from .errors import BudgetExceeded, FieldMismatch, LagrelError, ParseError
from .fields import field_from_tag
from .normalize import decide_equal, normal_form
from .oracle import DEFAULT_BUDGET, brute_force_diagram
from .symplectic import classify

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def __call__(self, obj):
        print(json.dumps(obj, sort_keys=True, indent=2 if self.pretty else None))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _diagram(path: str, field_tag_arg: str | None) -> Diagram:
    D = Diagram.loads(_read(path))
    if field_tag_arg is not None and field_from_tag(field_tag_arg) != D.field:
        raise FieldMismatch(f"{path} is over {D.field.tag}, not {field_tag_arg}")
    return D


def _relation_json(R: AffineRelation) -> dict:
    out = R.to_json()
    out["kind"] = classify(R).value if R.dom % 2 == 0 and R.cod % 2 == 0 else None
    if R.dom == 0 and R.cod == 0:
        out["scalar"] = "EmptyScalar" if R.empty else "UnitScalar"
    return out


def cmd_normalize(args, out):
    out(normal_form(_diagram(args.file, args.field)).to_json())
    return EXIT_OK


def cmd_eq(args, out):
    d1, d2 = _diagram(args.file1, args.field), _diagram(args.file2, args.field)
    same = decide_equal(d1, d2)
    out(same)
    return EXIT_OK if same else EXIT_FALSE


def cmd_interp(args, out):
    out(_relation_json(interpret(_diagram(args.file, args.field))))
    return EXIT_OK


def cmd_axiom_check(args, out):
    f = field_from_tag(args.field or "Fp:3")
    report = run_suite(f, samples=args.samples, seed=args.seed)
    passed = all(ok == n for ok, n in report.values())
    out({"field": f.tag, "samples": args.samples, "seed": args.seed, "results": report, "all_passed": passed})
    return EXIT_OK if passed else EXIT_FALSE


def cmd_stab(args, out):
    from .frontends.stabiliser import StabCircuit, stab_equal, stab_possible, stab_to_diagram

    c = StabCircuit.loads(_read(args.file))
    if args.field is not None and field_from_tag(args.field) != c.field:
        raise FieldMismatch(f"circuit is over {c.field.tag}, not {args.field}")
    if args.action == "interp":
        res = _relation_json(interpret(stab_to_diagram(c)))
        res["label"] = c.label
        out(res)
        return EXIT_OK
    if args.action == "normalize":
        out(normal_form(stab_to_diagram(c)).to_json())
        return EXIT_OK
    if args.action == "possible":
        ok = stab_possible(c)
        out({"possible": ok, "label": c.label})
        return EXIT_OK if ok else EXIT_FALSE
    if args.file2 is None:
        raise ParseError("stab eq needs two circuit files")
    same = stab_equal(c, StabCircuit.loads(_read(args.file2)))
    out(same)
    return EXIT_OK if same else EXIT_FALSE


def cmd_circuit(args, out):
    from .frontends.electrical import NotImpedanceForm, NotReciprocal, impedance_of, netlist_to_diagram, parse_netlist

    nl = parse_netlist(_read(args.file))
    D = netlist_to_diagram(nl)
    R = interpret(D)
    ports = [name for name, _ in nl.ports]
    if args.action == "behaviour":
        res = _relation_json(R)
        res["ports"] = ports
        out(res)
        return EXIT_OK
    if args.action == "check":
        ok = not R.empty
        out({"consistent": ok, "verdict": "consistent" if ok else "contradiction", "ports": ports})
        return EXIT_OK if ok else EXIT_FALSE
    Z = impedance_of(R)
    if isinstance(Z, NotImpedanceForm):
        out({"error": "NotImpedanceForm", "reason": Z.reason, "ports": ports})
        return EXIT_FALSE
    if isinstance(Z, NotReciprocal):
        out({"error": "NotReciprocal", "ports": ports})
        return EXIT_FALSE
    f = Z.field
    out({"field": f.tag, "ports": ports, "R": [[f.format(v) for v in r] for r in Z]})
    return EXIT_OK


def cmd_oracle(args, out):
    D = _diagram(args.file, args.field)
    if not D.field.finite:
        raise FieldMismatch("the oracle enumerates points and needs a prime field")
    hull, pts = brute_force_diagram(D, budget=args.budget)
    R = interpret(D)
    size = D.field.size
    exact = len(pts) == (0 if hull.empty else size ** hull.dimension)
    agree = exact and hull == R
    out({"agree": agree, "points": len(pts), "relation": R.to_json()})
    return EXIT_OK if agree else EXIT_FALSE


def _common(defaults: bool) -> argparse.ArgumentParser:
    # subcommands get SUPPRESS defaults so they never overwrite a flag given before them
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=d(None), help="Q, Fp:<p> or Qs")
    common.add_argument("--pretty", action="store_true", default=d(False), help="indent the JSON output")
    common.add_argument("--samples", type=int, default=d(20))
    common.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET))
    common.add_argument("--seed", type=int, default=d(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    p = argparse.ArgumentParser(prog="lagrel", description="Affine Lagrangian relation diagrams.", parents=[_common(True)])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="print the reduced AP-form")
    s.add_argument("file")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", parents=[common], help="decide equality of two diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("interp", parents=[common], help="print the denoted relation")
    s.add_argument("file")
    s.set_defaults(func=cmd_interp)

    s = sub.add_parser("axiom-check", parents=[common], help="run the randomized equation suite")
    s.set_defaults(func=cmd_axiom_check)

    s = sub.add_parser("stab", parents=[common], help="stabiliser circuit tools")
    s.add_argument("action", choices=["interp", "normalize", "possible", "eq"])
    s.add_argument("file")
    s.add_argument("file2", nargs="?")
    s.set_defaults(func=cmd_stab)

    s = sub.add_parser("circuit", parents=[common], help="electrical netlist tools")
    s.add_argument("action", choices=["behaviour", "impedance", "check"])
    s.add_argument("file")
    s.set_defaults(func=cmd_circuit)

    s = sub.add_parser("oracle", parents=[common], help="cross-check a diagram by enumeration")
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.pretty)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, FieldMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LagrelError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
