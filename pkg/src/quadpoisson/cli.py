"""Command-line front end: JSON in, structured verdicts and bracket tables out.

Every command is a thin wrapper over the library; no mathematics lives
here.  Inputs are file paths, `-` for stdin, or `catalog:` references such
as catalog:quaternions or catalog:quaternion_r(1,0,0).  Exit codes:
0 every check passed, 1 at least one check failed (reports are still
emitted), 2 malformed input.  JSON output is deterministic: identical
inputs give byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import catalog as cat
from .algebra import AlgebraSpec, UnitRequiredError, check_associative, find_unit
from .bialgebra import (
    CasimirViolationError,
    affine_restriction,
    bialgebra_axioms_check,
    cocommutator_from_bracket,
    cocommutator_to_linear_bracket,
    pencil_check,
    restriction_manifest,
)
from .bracket import PolyBracket, compat_direct, jacobiator, schouten_operator_check, translate
from .coboundary import RMatrix, cybe_check, derive_bracket_from_r, element_schouten, mybe_check
from .exact import ONE, SchemaError, rat, rat_str
from .reporting import CheckReport


class InputError(Exception):
    """Anything wrong with the inputs; maps to exit code 2."""

    def __init__(self, message: str, pointer: str = "") -> None:
        super().__init__(message)
        self.message = message
        self.pointer = pointer


def _read_json(source: str) -> object:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from None


def _load(source: str, want: type) -> object:
    """Resolve a catalog reference or parse a JSON file against the schema."""
    if source.startswith("catalog:"):
        try:
            obj = cat.resolve(source[len("catalog:"):])
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not isinstance(obj, want):
            raise InputError(
                f"{source} resolves to {type(obj).__name__}, expected {want.__name__}"
            )
        return obj
    data = _read_json(source)
    try:
        if want is AlgebraSpec:
            return AlgebraSpec.from_json(data)
        if want is PolyBracket:
            return PolyBracket.from_json(data)
        if want is RMatrix:
            return RMatrix.from_json(data)
    except SchemaError as exc:
        raise InputError(exc.reason, exc.pointer) from None
    raise InputError(f"unsupported input type {want.__name__}")


def _bracket_table_text(bracket: PolyBracket) -> List[str]:
    lines = []
    for i in range(bracket.n):
        for j in range(i + 1, bracket.n):
            lines.append(f"{{x^{i + 1},x^{j + 1}}} = {bracket.pair_poly(i, j).render()}")
    return lines


def _render_report_text(report: dict, out: List[str], indent: str = "") -> None:
    out.append(f"{indent}check {report['check']}: {report['verdict']}")
    for witness in report.get("witnesses", []):
        index = ",".join(str(i) for i in witness.get("index", []))
        residual = witness.get("residual", {})
        kind = residual.get("kind")
        if kind == "polynomial":
            body = json.dumps(residual["terms"], sort_keys=True)
        elif kind in ("tensor2", "tensor3"):
            body = json.dumps(residual["entries"], sort_keys=True)
        elif kind == "subcheck":
            out.append(f"{indent}  witness ({index}) {residual.get('label')}:")
            for inner in residual.get("witnesses", []):
                _render_report_text({"check": "-", "verdict": "-", "witnesses": [inner]}, out, indent + "    ")
            continue
        else:
            body = json.dumps(residual, sort_keys=True)
        out.append(f"{indent}  witness ({index}): {body}")


def _emit(payload: dict, fmt: str, text_lines: Optional[List[str]] = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        lines: List[str] = []
        if text_lines is not None:
            lines.extend(text_lines)
        else:
            for report in payload.get("reports", []):
                _render_report_text(report, lines)
        print("\n".join(lines))


def _reports_exit(reports: Sequence[CheckReport]) -> int:
    return 0 if all(r.ok for r in reports) else 1


# -- commands ---------------------------------------------------------------------


def _cmd_validate(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    assoc = check_associative(spec)
    unit = find_unit(spec) if assoc.ok else None
    payload = {
        "command": "validate",
        "algebra": spec.name,
        "reports": [assoc.to_json()],
        "unit": [rat_str(v) for v in unit] if unit is not None else None,
    }
    lines = [f"algebra {spec.name} (dim {spec.dim})"]
    _render_report_text(assoc.to_json(), lines)
    lines.append(f"unit: {payload['unit']}")
    _emit(payload, args.format, lines)
    return _reports_exit([assoc])


def _cmd_check(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    bracket = _load(args.bracket, PolyBracket)
    if bracket.n != spec.dim:
        raise InputError("bracket dimension does not match the algebra")
    try:
        if args.checker == "jacobi":
            report = jacobiator(bracket)
        elif args.checker == "compat":
            report = compat_direct(spec, bracket)
        else:
            report = schouten_operator_check(bracket)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"command": f"check {args.checker}", "reports": [report.to_json()]}
    _emit(payload, args.format)
    return _reports_exit([report])


def _cmd_derive(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    rm = _load(args.r, RMatrix)
    try:
        bracket = derive_bracket_from_r(spec, rm)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"command": "derive", "bracket": bracket.to_json()}
    _emit(payload, args.format, _bracket_table_text(bracket))
    return 0


def _cmd_schouten_r(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    rm = _load(args.r, RMatrix)
    try:
        tensor = element_schouten(spec, rm)
        cybe = cybe_check(spec, rm)
        mybe = mybe_check(spec, rm)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {
        "command": "schouten-r",
        "schouten_tensor": tensor.to_json(),
        "reports": [cybe.to_json(), mybe.to_json()],
    }
    lines = [f"[[r,r]] nonzero entries: {sum(1 for _ in tensor.nonzero())}"]
    _render_report_text(cybe.to_json(), lines)
    _render_report_text(mybe.to_json(), lines)
    _emit(payload, args.format, lines)
    return _reports_exit([cybe, mybe])


def _cmd_bialgebra(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    bracket = _load(args.bracket, PolyBracket)
    try:
        cocomm = cocommutator_from_bracket(spec, bracket)
        axioms = bialgebra_axioms_check(spec, cocomm)
    except (UnitRequiredError, ValueError) as exc:
        raise InputError(str(exc)) from None
    payload = {
        "command": "bialgebra",
        "cocommutator": cocomm.to_json(),
        "reports": [axioms.to_json()],
    }
    lines = _bracket_table_text(cocommutator_to_linear_bracket(cocomm))
    _render_report_text(axioms.to_json(), lines)
    _emit(payload, args.format, lines)
    return _reports_exit([axioms])


def _cmd_pencil(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    bracket = _load(args.bracket, PolyBracket)
    try:
        ts = [rat(t) for t in args.t]
    except ValueError as exc:
        raise InputError(f"bad t value: {exc}") from None
    try:
        lin = cocommutator_to_linear_bracket(cocommutator_from_bracket(spec, bracket))
        report = pencil_check(spec, bracket, lin, ts)
    except (UnitRequiredError, ValueError) as exc:
        raise InputError(str(exc)) from None
    payload = {"command": "pencil", "reports": [report.to_json()]}
    _emit(payload, args.format)
    return _reports_exit([report])


def _cmd_translate(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    bracket = _load(args.bracket, PolyBracket)
    unit = find_unit(spec)
    if unit is None:
        raise InputError("translate requires a unital algebra")
    try:
        t = rat(args.t)
    except ValueError as exc:
        raise InputError(f"bad t value: {exc}") from None
    moved = translate(bracket, unit, t)
    payload = {"command": "translate", "t": rat_str(t), "bracket": moved.to_json()}
    _emit(payload, args.format, _bracket_table_text(moved))
    return 0


def _cmd_restrict(args: argparse.Namespace) -> int:
    spec = _load(args.algebra, AlgebraSpec)
    bracket = _load(args.bracket, PolyBracket)
    try:
        restricted = affine_restriction(spec, bracket)
    except (CasimirViolationError, UnitRequiredError, ValueError) as exc:
        raise InputError(str(exc)) from None
    unit = find_unit(spec)
    unit_index = next(i for i, v in enumerate(unit) if v)
    payload = {
        "command": "restrict",
        "bracket": restricted.to_json(),
        "manifest": restriction_manifest(spec.dim, unit_index),
    }
    _emit(payload, args.format, _bracket_table_text(restricted))
    return 0


def _cmd_conformance(args: argparse.Namespace) -> int:
    if args.family != "quaternion":
        raise InputError(f"unknown conformance family: {args.family}")
    try:
        a, b, c = rat(args.a), rat(args.b), rat(args.c)
    except ValueError as exc:
        raise InputError(f"bad parameter: {exc}") from None
    result = cat.quaternion_conformance(a, b, c)
    lines = [
        f"conformance quaternion a={rat_str(a)} b={rat_str(b)} c={rat_str(c)}",
        f"lambda: {result['lambda']} ({result['lambda_note']})",
        f"matching entries: {result['agreement']['matching_entries']}/{result['agreement']['total_entries']}",
    ]
    for entry in result["entries"]:
        mark = "agree" if entry["match"] else "DIFFER"
        lines.append(f"  {entry['label']}: {mark}")
    for name, report in sorted(result["checks"].items()):
        lines.append(f"  {name}: {report['verdict']}")
    lines.append(f"  sphere(table): {result['sphere']['table']['verdict']}")
    lines.append(f"  sphere(derived): {result['sphere']['derived']['verdict']}")
    _emit(result, args.format, lines)
    derived_ok = all(
        result["checks"][key]["verdict"] == "pass"
        for key in ("derived_jacobi", "derived_compat", "derived_mybe")
    )
    return 0 if derived_ok else 1


def _cmd_catalog(args: argparse.Namespace) -> int:
    if args.action == "list":
        keys = cat.catalog_keys()
        payload = {"command": "catalog list", "keys": keys}
        lines = [
            f"{item['key']}({item['params']}) [{item['kind']}]" if item["params"] else f"{item['key']} [{item['kind']}]"
            for item in keys
        ]
        _emit(payload, args.format, lines)
        return 0
    reference = args.key
    if reference.startswith("catalog:"):
        reference = reference[len("catalog:"):]
    try:
        payload = cat.emit(reference)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    obj = cat.resolve(reference)
    if isinstance(obj, PolyBracket):
        lines = _bracket_table_text(obj)
    else:
        lines = [json.dumps(payload, indent=2, sort_keys=True)]
    _emit(payload, args.format, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadpoisson",
        description="Exact checks for quadratic Poisson brackets on structure-constant algebras.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="associativity and unit report")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="run a bracket checker")
    p.add_argument("checker", choices=("jacobi", "compat", "schouten"))
    p.add_argument("algebra")
    p.add_argument("bracket")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("derive", help="bracket derived from an r-matrix")
    p.add_argument("algebra")
    p.add_argument("r")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("schouten-r", help="element Schouten tensor of r with CYBE and commutant verdicts")
    p.add_argument("algebra")
    p.add_argument("r")
    p.set_defaults(func=_cmd_schouten_r)

    p = sub.add_parser("bialgebra", help="cocommutator and bialgebra axiom report")
    p.add_argument("algebra")
    p.add_argument("bracket")
    p.set_defaults(func=_cmd_bialgebra)

    p = sub.add_parser("pencil", help="Jacobi for the bracket pencil at given t values")
    p.add_argument("algebra")
    p.add_argument("bracket")
    p.add_argument("--t", action="append", required=True, help="rational parameter, repeatable")
    p.set_defaults(func=_cmd_pencil)

    p = sub.add_parser("translate", help="translate the bracket by t times the unit")
    p.add_argument("algebra")
    p.add_argument("bracket")
    p.add_argument("--t", required=True)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("restrict", help="affine restriction along the unit coordinate")
    p.add_argument("algebra")
    p.add_argument("bracket")
    p.set_defaults(func=_cmd_restrict)

    p = sub.add_parser("conformance", help="compare a printed table with the derived bracket")
    p.add_argument("family", choices=("quaternion",))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(func=_cmd_conformance)

    p = sub.add_parser("catalog", help="list or emit built-in examples")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("key", nargs="?")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "emit" and not args.key:
        parser.error("catalog emit requires a key")
    try:
        return args.func(args)
    except InputError as exc:
        error = {"error": {"message": exc.message, "pointer": exc.pointer}}
        if args.format == "json":
            print(json.dumps(error, indent=2, sort_keys=True))
        else:
            where = f" at {exc.pointer}" if exc.pointer else ""
            print(f"error{where}: {exc.message}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
