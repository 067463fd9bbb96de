"""JSON ingestion and emission for invariant tables and arcs.

File shapes::

    {"invariants": {"1": "1", "2": "9/8"}}          # Gromov-Witten table
    {"instantons": {"1": "1", "2": "0"}}            # instanton table
    {"truncation": 16, "x1": [[2, "1"]], "x2": [[1, "1"]], ...}   # arc
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from gwcovers.arcgeom import DEFAULT_TRUNCATION, ArcMap
from gwcovers.errors import ParseError, SchemaError
from gwcovers.multicover import GWTable, InstantonTable
from gwcovers.rational import format_rational, parse_rational
from gwcovers.series import TruncatedSeries

__all__ = [
    "arc_to_json",
    "dump_table",
    "ingest_arc",
    "ingest_gw_table",
    "ingest_instanton_table",
    "load_json",
    "parse_arc",
    "parse_table",
]


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def parse_table(data: Any, key: str) -> dict[int, Fraction]:
    """Dense ``{degree: value}`` map from ``{key: {"<d>": "<p/q>"}}``."""
    if not isinstance(data, Mapping) or key not in data:
        raise SchemaError(f"expected an object with key {key!r}", key)
    raw = data[key]
    if not isinstance(raw, Mapping):
        raise SchemaError("expected an object mapping degrees to rationals", key)
    out: dict[int, Fraction] = {}
    for d_text, value in raw.items():
        where = f"{key}.{d_text}"
        if not (isinstance(d_text, str) and d_text.isdigit() and int(d_text) >= 1):
            raise SchemaError(f"degree {d_text!r} is not a positive integer", where)
        d = int(d_text)
        if d in out:
            raise SchemaError(f"duplicate degree {d}", where)
        out[d] = parse_rational(value, where)
    if not out:
        raise SchemaError("table is empty", key)
    for d in range(1, max(out) + 1):
        if d not in out:
            raise SchemaError(f"missing degree {d}", key)
    return dict(sorted(out.items()))


def ingest_gw_table(path: str | Path) -> GWTable:
    return GWTable(parse_table(load_json(path), "invariants"))


def ingest_instanton_table(path: str | Path) -> dict[int, Fraction]:
    return parse_table(load_json(path), "instantons")


def dump_table(entries: Mapping[int, Fraction] | GWTable | InstantonTable, key: str) -> dict[str, Any]:
    if isinstance(entries, (GWTable, InstantonTable)):
        entries = entries.entries
    return {key: {str(d): format_rational(v) for d, v in sorted(entries.items())}}


def _parse_coord(raw: Any, name: str, trunc: int) -> TruncatedSeries:
    if not isinstance(raw, list):
        raise SchemaError("expected a list of [exponent, coefficient] pairs", name)
    seen: set[int] = set()
    terms = []
    for idx, item in enumerate(raw):
        where = f"{name}[{idx}]"
        if not (isinstance(item, list) and len(item) == 2):
            raise SchemaError("expected an [exponent, coefficient] pair", where)
        e, c = item
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise SchemaError(f"exponent {e!r} is not a nonnegative integer", where)
        if e >= trunc:
            raise SchemaError(f"exponent {e} is not below the truncation {trunc}", where)
        if e in seen:
            raise SchemaError(f"duplicate exponent {e}", where)
        seen.add(e)
        coeff = parse_rational(c, where)
        if e == 0 and coeff != 0:
            raise SchemaError("coordinates must vanish at t = 0", where)
        terms.append((e, coeff))
    return TruncatedSeries(tuple(terms), trunc)


def parse_arc(data: Any) -> ArcMap:
    if not isinstance(data, Mapping):
        raise SchemaError("expected a JSON object")
    unknown = sorted(set(data) - {"truncation", "x1", "x2", "x3", "x4"})
    if unknown:
        raise SchemaError(f"unexpected keys {unknown}")
    trunc = data.get("truncation", DEFAULT_TRUNCATION)
    if isinstance(trunc, bool) or not isinstance(trunc, int) or trunc < 1:
        raise SchemaError(f"truncation {trunc!r} is not a positive integer", "truncation")
    coords = []
    for name in ("x1", "x2", "x3", "x4"):
        if name not in data:
            raise SchemaError("missing coordinate", name)
        coords.append(_parse_coord(data[name], name, trunc))
    return ArcMap(*coords)


def ingest_arc(path: str | Path) -> ArcMap:
    return parse_arc(load_json(path))


def arc_to_json(arc: ArcMap) -> dict[str, Any]:
    out: dict[str, Any] = {"truncation": arc.trunc}
    for name, s in zip(("x1", "x2", "x3", "x4"), arc.coords):
        out[name] = [[e, format_rational(c)] for e, c in s.terms]
    return out
