"""Command-line front end.

Verbs: classify, enumerate, member, normalize, blowup, count, witness.
Flags: --weights (comma-separated, positional on x,y,z,t), --json,
--jet-order N, --max-a N, --simple, --params.  The polynomial argument "-"
switches to batch mode: one polynomial per stdin line, processed with the
same verb and flags.  Exit codes: 0 success, 2 rejection (e.g. non-member),
1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .blowup import AMBIENT, charts, discrepancy, lift_check, strict_transform
from .classify import germ_report
from .contractions import (
    ContractionClass,
    MembershipRejection,
    decide_membership,
    enumerate_contractions,
    family_witness,
)
from .errors import GermError, ParseError
from .normal_form import reduce_to_simple, weighted_normal_form
from .parsing import DEFAULT_VARIABLES, parse_polynomial
from .poly import Polynomial, WeightVector, format_polynomial
from .substitution import JetSubstitution

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


def _parse_weights(text: str, variables: tuple[str, ...]) -> WeightVector:
    values = [int(part) for part in text.split(",") if part.strip()]
    return WeightVector.for_variables(variables[: len(values)], values)


def _parse_params(text: str):
    parts = [Fraction(part) for part in text.split(",") if part.strip()]
    return parts[0] if len(parts) == 1 else tuple(parts)


def _weights_doc(w: WeightVector) -> dict:
    return {name: value for name, value in w.items()}


def _witness_doc(sigma: JetSubstitution) -> dict:
    doc = {
        "jet_order": sigma.jet_order,
        "components": {v: format_polynomial(p) for v, p in sigma.components.items()},
    }
    if sigma.inverse_components is not None:
        doc["inverse_components"] = {
            v: format_polynomial(p) for v, p in sigma.inverse_components.items()
        }
    return doc


def _class_doc(cls: ContractionClass) -> dict:
    return {
        "kind": cls.kind,
        "weights": _weights_doc(cls.weights) if cls.weights else None,
        "params": [str(p) for p in cls.params],
        "cA_index": cls.cA,
        "discrepancy": cls.discrepancy,
        "representative": format_polynomial(cls.representative)
        if cls.representative is not None
        else None,
    }


def _report_lines(doc: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_report_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  -")
                lines.extend(_report_lines(item, indent + "    "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def _run_classify(f: Polynomial, args) -> tuple[dict, list, int]:
    report = germ_report(f)
    doc = {
        "type": str(report.type_tag),
        "multiplicity": report.multiplicity
        if report.multiplicity != float("inf")
        else "infinity",
        "quadratic_rank": report.quadratic_rank,
        "corank": report.corank,
        "milnor_number": report.milnor_number,
    }
    if report.cA_index is not None:
        doc["cA_index"] = report.cA_index
    if report.residual is not None:
        doc["residual"] = format_polynomial(report.residual)
    if report.normal_form is not None:
        doc["normal_form"] = format_polynomial(report.normal_form.polynomial)
        doc["unit_form"] = format_polynomial(report.normal_form.unit_form)
    witnesses = [_witness_doc(report.witness)] if report.witness is not None else []
    return doc, witnesses, EXIT_OK


def _census_doc(census) -> dict:
    return {
        "count_local_analytic": census.count_local_analytic,
        "count_over_base": census.count_over_base,
        "a_max": census.a_max,
        "classes": [_class_doc(c) for c in census.classes],
        "over_base_systems": [list(s) for s in census.over_base_systems]
        if census.over_base_systems is not None
        else None,
        "smooth_family": census.smooth_family,
    }


def _run_enumerate(f: Polynomial, args) -> tuple[dict, list, int]:
    census = enumerate_contractions(f, max_a=args.max_a)
    return _census_doc(census), [], EXIT_OK


def _run_count(f: Polynomial, args) -> tuple[dict, list, int]:
    census = enumerate_contractions(f, max_a=args.max_a)
    doc = _census_doc(census)
    doc.pop("classes")
    return doc, [], EXIT_OK


def _run_member(f: Polynomial | None, args) -> tuple[dict, list, int]:
    if args.weights is None:
        raise GermError("member needs --weights")
    variables = f.variables if f is not None else ("x", "y", "z")
    w = _parse_weights(args.weights, variables)
    outcome = decide_membership(f, w)
    if isinstance(outcome, MembershipRejection):
        return {"member": False, "reason": outcome.reason}, [], EXIT_REJECTED
    return {"member": True, "class": _class_doc(outcome)}, [], EXIT_OK


def _run_normalize(f: Polynomial, args) -> tuple[dict, list, int]:
    if args.weights is None:
        raise GermError("normalize needs --weights")
    w = _parse_weights(args.weights, f.variables)
    marked = reduce_to_simple(f, w) if args.simple else weighted_normal_form(f, w)
    doc = {
        "polynomial": format_polynomial(marked.polynomial),
        "unit_form": format_polynomial(marked.unit_form),
        "marking": {
            format_polynomial(m): str(c) for m, c in sorted(
                marked.marking.items(), key=lambda kv: format_polynomial(kv[0])
            )
        },
    }
    return doc, [_witness_doc(marked.witness)], EXIT_OK


def _run_blowup(f: Polynomial, args) -> tuple[dict, list, int]:
    if args.weights is None:
        raise GermError("blowup needs --weights")
    w = _parse_weights(args.weights, f.variables)
    chart_docs = []
    for chart in charts(w, f.variables):
        filled = strict_transform(f, w, chart)
        chart_docs.append(
            {
                "chart": chart.chart_variable,
                "quotient_order": chart.quotient_order,
                "substitution": {
                    v: format_polynomial(p) for v, p in chart.substitution.items()
                },
                "strict_transform": format_polynomial(filled.transform),
                "exceptional": f"{format_polynomial(chart.exceptional)} = 0",
            }
        )
    doc = {
        "weight": f.weight(w),
        "discrepancy": discrepancy(w, f) if len(f.variables) == 4 else None,
        "charts": chart_docs,
    }
    return doc, [], EXIT_OK


def _run_witness(f: Polynomial, args) -> tuple[dict, list, int]:
    if args.weights is None or args.params is None:
        raise GermError("witness needs --weights and --params")
    w = _parse_weights(args.weights, f.variables)
    outcome = decide_membership(f, w)
    if isinstance(outcome, MembershipRejection):
        return {"member": False, "reason": outcome.reason}, [], EXIT_REJECTED
    sigma = family_witness(outcome, _parse_params(args.params))
    lift = lift_check(sigma, w, f)
    doc = {
        "class": _class_doc(outcome),
        "params": args.params,
        "fixes_representative": True,
        "lifts": lift.lifts,
    }
    return doc, [_witness_doc(sigma)], EXIT_OK


_HANDLERS = {
    "classify": _run_classify,
    "enumerate": _run_enumerate,
    "count": _run_count,
    "member": _run_member,
    "normalize": _run_normalize,
    "blowup": _run_blowup,
    "witness": _run_witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germkit",
        description="Exact classification of 3-fold hypersurface germs, "
        "divisorial-contraction censuses, and weighted-blowup charts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("classify", "singularity report for a germ"),
        ("enumerate", "divisorial-contraction census over a germ"),
        ("count", "census counts only"),
        ("member", "match a (germ, weights) pair against the classification"),
        ("normalize", "weighted normal form (marked) with witness"),
        ("blowup", "weighted-blowup charts and strict transforms"),
        ("witness", "automorphism family member for a classified pair"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "polynomial",
            help="polynomial in x,y,z,t ('ambient' for the smooth 3-space, '-' for stdin batch)",
        )
        p.add_argument("--weights", help="comma-separated positive integers, positional")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--jet-order", type=int, default=None, help="truncate the input germ")
        p.add_argument("--max-a", type=int, default=None, help="cap the census discrepancy search")
        p.add_argument("--simple", action="store_true", help="normalize: reduce to the simple form")
        p.add_argument("--params", help="witness: family parameters (e.g. '1/2' or '1,3/5,4/5')")
    return parser


def _execute(args) -> tuple[dict, int]:
    document = {
        "command": args.command,
        "input": {
            "polynomial": args.polynomial,
            "weights": args.weights,
            "options": {
                "jet_order": args.jet_order,
                "max_a": args.max_a,
                "simple": args.simple,
                "params": args.params,
            },
        },
        "result": None,
        "witnesses": [],
        "errors": [],
    }
    try:
        if args.polynomial == "ambient":
            f = None
            if args.command != "member":
                raise GermError("'ambient' is only meaningful for member")
        else:
            f = parse_polynomial(args.polynomial, DEFAULT_VARIABLES)
            if args.jet_order is not None:
                f = f.truncated(args.jet_order)
        result, witnesses, code = _HANDLERS[args.command](f, args)
        document["result"] = result
        document["witnesses"] = witnesses
        return document, code
    except ParseError as exc:
        document["errors"].append({"kind": "syntax", "message": str(exc)})
        return document, EXIT_ERROR
    except GermError as exc:
        document["errors"].append({"kind": type(exc).__name__, "message": str(exc)})
        return document, EXIT_ERROR


def _emit(document: dict, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        json.dump(document, stream, indent=2, default=str)
        stream.write("\n")
        return
    if document["errors"]:
        for err in document["errors"]:
            stream.write(f"error[{err['kind']}]: {err['message']}\n")
        return
    for line in _report_lines({"result": document["result"]}):
        stream.write(line + "\n")
    for i, witness in enumerate(document["witnesses"]):
        stream.write(f"witness[{i}]:\n")
        for line in _report_lines(witness, "  "):
            stream.write(line + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.polynomial == "-":
        worst = EXIT_OK
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            args.polynomial = line
            document, code = _execute(args)
            _emit(document, args.json)
            worst = max(worst, code)
        return worst
    document, code = _execute(args)
    _emit(document, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
