"""System file format: JSON documents, canonical on output.

Layout::

    {
      "name": "optional",
      "n": 2,
      "scalar": "rational",            // or "float"
      "matrices": [ [["1/2", 1], [0, "-3/4"]], ... ],   // matrix i has label i+1
      "edges": [ [0, 1, 2], ... ],     // [src, dst, label], nodes 0-based, labels 1-based
      "nodes": ["u", "w"]              // optional display names
    }

Rational entries are integers or strings "p/q" in any form; serialization
reduces to lowest terms and emits integers without the "/1".  Float entries
are JSON numbers and round-trip at full precision.  Mixing kinds is
rejected.  Serialization sorts edges and fixes the key order, so equal
systems produce byte-identical documents.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path as FsPath

from .errors import ParseError
from .matrices import Field, Matrix
from .model import Edge, LabeledGraph, MatrixSet, SwitchedSystem

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_KNOWN_KEYS = {"name", "n", "scalar", "matrices", "edges", "nodes"}


def _parse_entry(x, field: Field, where: str):
    if field is Field.RATIONAL:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise ParseError(f"{where}: rational entries must be integers or 'p/q' strings, got {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if not _RATIONAL_RE.match(x.strip()):
            raise ParseError(f"{where}: malformed rational {x!r}")
        if "/" in x:
            num, den = x.split("/")
            if int(den) == 0:
                raise ParseError(f"{where}: zero denominator in {x!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(x))
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: float entries must be numbers, got {x!r}")
    return float(x)


def parse_system(text: str) -> SwitchedSystem:
    """Parse a system document; malformed input raises :class:`ParseError`
    with the line and column when the JSON itself is broken."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    for key in ("n", "scalar", "matrices", "edges"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    try:
        fld = Field(doc["scalar"])
    except ValueError:
        raise ParseError(f"'scalar' must be 'rational' or 'float', got {doc['scalar']!r}") from None
    raw_mats = doc["matrices"]
    if not isinstance(raw_mats, list) or not raw_mats:
        raise ParseError("'matrices' must be a nonempty list")
    mats = []
    for i, rm in enumerate(raw_mats):
        where = f"matrices[{i}]"
        if not isinstance(rm, list) or len(rm) != n or any(not isinstance(r, list) or len(r) != n for r in rm):
            raise ParseError(f"{where}: expected {n} rows of {n} entries")
        mats.append(tuple(tuple(_parse_entry(x, fld, where) for x in row) for row in rm))
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")
    edges = []
    for i, re_ in enumerate(raw_edges):
        if (
            not isinstance(re_, list)
            or len(re_) != 3
            or any(not isinstance(x, int) or isinstance(x, bool) for x in re_)
        ):
            raise ParseError(f"edges[{i}]: expected [src, dst, label] integers")
        edges.append(Edge(*re_))
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string")
    nodes = doc.get("nodes")
    if nodes is not None:
        if not isinstance(nodes, list) or any(not isinstance(s, str) for s in nodes):
            raise ParseError("'nodes' must be a list of strings")
        nodes = tuple(nodes)
    graph = LabeledGraph(node_count=_node_count(edges, nodes), edges=tuple(edges))
    matset = MatrixSet(n=n, field=fld, matrices=tuple(mats))
    return SwitchedSystem(graph=graph, matrices=matset, name=name, node_names=nodes)


def _node_count(edges: list[Edge], nodes) -> int:
    hi = max((max(e.src, e.dst) for e in edges), default=-1) + 1
    if nodes is not None:
        return max(hi, len(nodes))
    return hi if hi > 0 else 1


def _entry_out(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    return float(x)


def serialize_system(system: SwitchedSystem) -> str:
    """Canonical document text; parse(serialize(s)) == s and equal systems
    serialize identically."""
    doc: dict = {}
    if system.name is not None:
        doc["name"] = system.name
    doc["n"] = system.n
    doc["scalar"] = system.field.value
    doc["matrices"] = [[[_entry_out(x) for x in row] for row in m] for m in system.matrices.matrices]
    doc["edges"] = [[e.src, e.dst, e.label] for e in sorted(system.graph.edges)]
    if system.node_names is not None:
        doc["nodes"] = list(system.node_names)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_system(path: str | FsPath) -> SwitchedSystem:
    return parse_system(FsPath(path).read_text(encoding="utf-8"))


def save_system(system: SwitchedSystem, path: str | FsPath) -> None:
    FsPath(path).write_text(serialize_system(system), encoding="utf-8")
