"""Verdicts and reports as JSON-ready dictionaries.

Every converter returns plain dicts/lists/strings/numbers with a fixed key
order, so serialized reports are byte-identical across runs on the same
input.  Rational entries serialize as ints or "p/q" strings, matching the
system file format; floats pass through json's repr.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .boundedness import CjsrBounds, StructureReport
from .deadbeat import DeadbeatVerdict
from .irreducible import IrreducibilityVerdict
from .matrices import Matrix
from .model import Path, SwitchedSystem, ValidationReport
from .subspaces import Subspace


def scalar_out(x) -> Any:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    return float(x)


def vector_out(v) -> list:
    return [scalar_out(x) for x in v]


def matrix_out(m: Matrix) -> list:
    return [vector_out(row) for row in m]


def subspace_out(s: Subspace | None) -> dict | None:
    if s is None:
        return None
    return {
        "ambient_dim": s.ambient_dim,
        "dim": s.dim,
        "field": s.field.value,
        "basis": [vector_out(v) for v in s.basis],
    }


def path_out(p: Path | None, system: SwitchedSystem | None = None) -> dict | None:
    if p is None:
        return None
    out = {
        "length": p.length,
        "source": p.source,
        "destination": p.destination,
        "labels": list(p.labels),
        "edges": [[e.src, e.dst, e.label] for e in p.edges],
    }
    if system is not None and system.node_names is not None:
        out["nodes"] = [system.node_name(v) for v in p.nodes_visited()]
    return out


def validation_out(r: ValidationReport) -> dict:
    return {
        "ok": r.ok,
        "n": r.n,
        "field": r.field.value,
        "node_count": r.node_count,
        "edge_count": r.edge_count,
        "dimensions_ok": r.dimensions_ok,
        "duplicate_free": r.duplicate_free,
        "labels_declared": r.labels_declared,
        "labels_used": list(r.labels_used),
        "unused_labels": list(r.unused_labels),
        "effective_mode_count": r.effective_mode_count,
        "strongly_connected": r.strongly_connected,
        "warnings": list(r.warnings),
    }


def deadbeat_out(v: DeadbeatVerdict, system: SwitchedSystem | None = None) -> dict:
    return {
        "is_deadbeat": v.is_deadbeat,
        "horizon_bound": v.horizon_bound,
        "minimal_horizon": v.minimal_horizon,
        "witness": path_out(v.witness, system),
        "field": v.field.value,
        "tolerance": v.tolerance,
    }


def irreducibility_out(v: IrreducibilityVerdict) -> dict:
    return {
        "status": v.status.value,
        "method": v.method,
        "witness": subspace_out(v.witness),
        "tolerance": v.tolerance,
        "achieved_min": v.achieved_min,
        "notes": list(v.notes),
    }


def bounds_out(b: CjsrBounds, depth: int | None = None) -> dict:
    out: dict[str, Any] = {"lower": b.lower, "upper": b.upper}
    if depth is not None:
        out["depth"] = depth
    return out


def structure_out(r: StructureReport, system: SwitchedSystem | None = None) -> dict:
    def node_label(v: int):
        return system.node_name(v) if system is not None and system.node_names else v

    return {
        "linearly_connected": r.linearly_connected,
        "failing_pair": list(r.failing_pair) if r.failing_pair is not None else None,
        "irreducible_nodes": sorted(r.irreducible_nodes),
        "irreducible_node_names": sorted(str(node_label(v)) for v in r.irreducible_nodes),
        "unknown_nodes": sorted(r.unknown_nodes),
        "reducible_witnesses": {
            str(v): subspace_out(w) for v, w in sorted(r.reducible_witnesses.items())
        },
        "unavoidable": r.unavoidable,
        "all_nodes_irreducible": r.all_nodes_irreducible,
        "conditions_hold": r.conditions_hold,
        "statements": list(r.statements),
        "cjsr_lower": r.cjsr_lower,
        "cjsr_upper": r.cjsr_upper,
        "depth": r.depth,
    }
