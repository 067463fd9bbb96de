"""Command-line front end.

Every subcommand prints one JSON report on stdout (and to ``--out`` if
given). Exit status: 0 success, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from gwcovers import arcgeom, multicover, rootsys
from gwcovers.errors import CoverError
from gwcovers.io import dump_table, ingest_arc, ingest_gw_table, ingest_instanton_table
from gwcovers.rational import format_rational

CONJECTURAL_NOTE = "conjectural: one-nodal higher-genus formula is a conjecture, not a theorem"


class Report(dict):
    """Ordered report payload; ``status`` decides the exit code."""

    def __init__(self, command: str, inputs: dict[str, Any]) -> None:
        super().__init__(command=command, inputs=inputs, results={}, notes=[], status="ok")

    def to_json(self) -> str:
        return json.dumps(self, indent=2) + "\n"


def _q(x: Fraction | int) -> str:
    return format_rational(x)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _diagram(kind: str, marked: str) -> rootsys.MarkedDiagram:
    verts = {rootsys.resolve_marked(kind, tok) for tok in marked.split(",") if tok.strip()}
    return rootsys.build_diagram(kind, verts)


def _case_label(d: rootsys.MarkedDiagram) -> dict[str, Any]:
    return {"type": d.kind, "marked": sorted(d.marked)}


def _selected_cases(args: argparse.Namespace, parser: argparse.ArgumentParser) -> list[rootsys.MarkedDiagram]:
    if args.all:
        if args.type or args.marked:
            parser.error("--all cannot be combined with --type/--marked")
        return rootsys.contraction_diagrams()
    if not (args.type and args.marked):
        parser.error("give either --all or both --type and --marked")
    return [_diagram(args.type, args.marked)]


# --- root system commands -------------------------------------------------


def cmd_roots(args: argparse.Namespace, rep: Report) -> None:
    rs = rootsys.positive_roots(rootsys.build_diagram(args.type, {1}))
    rep["results"] = {
        "count": len(rs),
        "highest_root": list(rs.highest_root),
        "positive_roots": [list(v) for v in rs.positives],
    }


def cmd_orbits(args: argparse.Namespace, rep: Report) -> None:
    dec = rootsys.w0_orbits(rootsys.positive_roots(_diagram(args.type, args.marked)))
    rep["inputs"]["marked"] = sorted(dec.root_system.diagram.marked)
    rep["results"] = {
        "orbit_count": len(dec.orbits),
        "orbits": [
            {"alpha1": o.alpha1, "size": len(o), "members": [list(v) for v in o.members]}
            for o in dec.orbits
        ],
    }


def cmd_verify_alpha1(args: argparse.Namespace, rep: Report) -> None:
    cases = []
    for d in _selected_cases(args, args._parser):
        chk = rootsys.verify_alpha1_invariant(d)
        entry = {**_case_label(d), "status": "verified" if chk.verified else "counterexample"}
        if not chk.verified:
            entry["counterexample"] = [list(v) for v in chk.counterexample]
            entry["reason"] = chk.reason
            rep["status"] = "fail"
        cases.append(entry)
    rep["results"] = {"cases": cases}


def cmd_length(args: argparse.Namespace, rep: Report) -> None:
    d = _diagram(args.type, args.marked)
    rep["inputs"]["marked"] = sorted(d.marked)
    rep["results"] = {"length": rootsys.length_of(d)}


def cmd_discriminant(args: argparse.Namespace, rep: Report) -> None:
    d = _diagram(args.type, args.marked)
    r = rootsys.discriminant_report(d)
    rep["inputs"]["marked"] = sorted(d.marked)
    rep["results"] = {
        "length": r.length,
        "curv_components": {str(i): n for i, n in r.curv_components.items()},
        "sing_components": r.sing_components,
        "sing_component_sizes": list(r.sing_sizes),
    }


def cmd_verify_cycle_bound(args: argparse.Namespace, rep: Report) -> None:
    if args.all and args.order is not None:
        args._parser.error("--order cannot be combined with --all")
    out = []
    for d in _selected_cases(args, args._parser):
        orders = [args.order] if args.order is not None else range(1, rootsys.length_of(d) + 1)
        for i in orders:
            cert = rootsys.verify_cycle_bound(d, i)
            statuses = sorted({r.status for r in cert.results})
            status = "pass" if cert.passed else next(s for s in statuses if s != "pass")
            if status != "pass":
                rep["status"] = "fail"
            out.append(
                {
                    **_case_label(d),
                    "order": i,
                    "status": status,
                    "roots": [
                        {
                            "root": list(r.root),
                            "lower_bound": list(r.lower_bound) if r.lower_bound else None,
                            "status": r.status,
                        }
                        for r in cert.results
                    ],
                }
            )
    rep["results"] = {"certificates": out}


# --- multiple-cover commands ----------------------------------------------


def cmd_contrib_fp(args: argparse.Namespace, rep: Report) -> None:
    rep["results"] = {"value": _q(multicover.cover_coeff(args.genus, args.degree))}


def cmd_contrib_embedded(args: argparse.Namespace, rep: Report) -> None:
    if any(k < 0 for k in args.k):
        args._parser.error("--k entries must be nonnegative")
    if len(args.k) > 6:
        args._parser.error("--k takes at most six multiplicities")
    rep["inputs"]["k"] = args.k
    rep["results"] = {"value": _q(multicover.embedded_contribution(args.genus, args.degree, args.k))}


def cmd_contrib_nodal(args: argparse.Namespace, rep: Report) -> None:
    if args.conjectural:
        g = args.genus if args.genus is not None else 0
        rep["inputs"]["genus"] = g
        value = multicover.nodal_contribution_conjectural(g, args.degree)
        rep["results"] = {"value": _q(value), "conjectural": True}
        rep["notes"].append(CONJECTURAL_NOTE)
    else:
        if args.genus not in (None, 0):
            args._parser.error("higher genus nodal contributions require --conjectural")
        rep["results"] = {"value": _q(multicover.nodal_contribution(args.degree))}


def cmd_contrib_chain(args: argparse.Namespace, rep: Report) -> None:
    if any(d < 1 for d in args.degrees):
        args._parser.error("--degrees entries must be positive")
    rep["results"] = {"value": _q(multicover.chain_contribution(args.genus, args.degrees))}


def cmd_forward(args: argparse.Namespace, rep: Report) -> None:
    n = ingest_instanton_table(args.input)
    top = args.max_degree if args.max_degree is not None else max(n)
    rep["inputs"]["max_degree"] = top
    rep["results"] = dump_table(multicover.forward_gw(n, top), "invariants")


def cmd_invert(args: argparse.Namespace, rep: Report) -> None:
    table = multicover.invert_instanton(ingest_gw_table(args.input))
    bad = [d for d, ok in table.integral.items() if not ok]
    rep["results"] = {
        **dump_table(table, "instantons"),
        "integral": {str(d): ok for d, ok in table.integral.items()},
        "all_integral": table.all_integral,
    }
    if bad:
        rep["notes"].append(f"non-integral instanton numbers at degrees {bad}")
        if args.require_integral:
            rep["status"] = "fail"


def cmd_cd4(args: argparse.Namespace, rep: Report) -> None:
    arc = ingest_arc(args.arc)
    if args.truncation is not None:
        arc = arc.with_truncation(args.truncation)
    rep["inputs"]["truncation"] = arc.trunc
    r = arcgeom.cd4_report(arc, genus=args.genus, max_degree=args.max_degree)
    tr = r.transversality
    rep["results"] = {
        "k2": r.k2,
        "k1": r.k1,
        "k1_certified": r.k1_certified,
        "conic_value": _q(r.conic_value),
        "generic": r.generic,
        "smooth": r.smooth,
        "d1_series": [[e, _q(c)] for e, c in r.d1_series.terms],
        "d1_truncation": r.d1_series.trunc,
        "transversality": {
            "valuation": tr.valuation,
            "bound": tr.bound,
            "transverse": tr.transverse,
            "lower_bound_only": tr.lower_bound_only,
        },
        "contributions": (
            {str(d): _q(v) for d, v in r.contributions.items()} if r.contributions is not None else None
        ),
    }
    rep["notes"].extend(r.notes)


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--out", type=Path, help="also write the JSON report here")

    parser = argparse.ArgumentParser(
        prog="gwcovers",
        description="Multiple-cover contributions, ADE orbit checks and cD4 multiplicities.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str, into=sub) -> argparse.ArgumentParser:
        p = into.add_parser(name, parents=[common], help=help, allow_abbrev=False)
        p.set_defaults(func=func, _parser=p)
        return p

    p = add("roots", cmd_roots, "list the positive roots of an ADE diagram")
    p.add_argument("--type", required=True)

    for name, func, text in (
        ("orbits", cmd_orbits, "W0-orbits of root hyperplanes"),
        ("length", cmd_length, "length of a contraction case"),
        ("discriminant", cmd_discriminant, "discriminant component census"),
    ):
        p = add(name, func, text)
        p.add_argument("--type", required=True)
        p.add_argument("--marked", required=True, help="vertex numbers, 'center' or 'adjacent'")

    p = add("verify-alpha1", cmd_verify_alpha1, "check the marked coefficient is a complete orbit invariant")
    p.add_argument("--all", action="store_true")
    p.add_argument("--type")
    p.add_argument("--marked")

    p = add("verify-cycle-bound", cmd_verify_cycle_bound, "certify the subadditivity cycle bound")
    p.add_argument("--all", action="store_true")
    p.add_argument("--type")
    p.add_argument("--marked")
    p.add_argument("--order", type=_positive)

    contrib = add("contrib", None, "multiple-cover contributions")
    csub = contrib.add_subparsers(dest="formula", required=True)

    p = add("fp", cmd_contrib_fp, "(-1,-1) curve cover coefficient", csub)
    p.add_argument("--genus", type=_nonneg, default=0)
    p.add_argument("--degree", type=_positive, required=True)

    p = add("embedded", cmd_contrib_embedded, "contractable curve with multiplicities k", csub)
    p.add_argument("--genus", type=_nonneg, default=0)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--k", type=_int_list, required=True)

    p = add("nodal", cmd_contrib_nodal, "one-nodal rational curve", csub)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--genus", type=_nonneg)
    p.add_argument("--conjectural", action="store_true")

    p = add("chain", cmd_contrib_chain, "contractable chain of curves", csub)
    p.add_argument("--genus", type=_nonneg, default=0)
    p.add_argument("--degrees", type=_int_list, required=True)

    p = add("forward", cmd_forward, "instanton numbers to Gromov-Witten invariants")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--max-degree", type=_positive)

    p = add("invert", cmd_invert, "Gromov-Witten invariants to instanton numbers")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--require-integral", action="store_true")

    p = add("cd4", cmd_cd4, "k1, k2 of a cD4 contraction from an arc")
    p.add_argument("--arc", type=Path, required=True)
    p.add_argument("--truncation", type=_positive)
    p.add_argument("--genus", type=_nonneg, default=0)
    p.add_argument("--max-degree", type=_positive, default=2)

    return parser


_SKIP = {"func", "_parser", "out", "command", "formula"}


def run(argv: Sequence[str] | None = None) -> tuple[int, Report]:
    args = build_parser().parse_args(argv)
    name = args.command if args.command != "contrib" else f"contrib {args.formula}"
    inputs = {
        k.replace("_", "-"): (str(v) if isinstance(v, Path) else v)
        for k, v in sorted(vars(args).items())
        if k not in _SKIP and v is not None and v is not False
    }
    rep = Report(name, inputs)
    try:
        args.func(args, rep)
    except CoverError as exc:
        rep["status"] = "error"
        rep["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(f"gwcovers: {type(exc).__name__}: {exc}", file=sys.stderr)
    text = rep.to_json()
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    return (0 if rep["status"] == "ok" else 1), rep


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
