"""Command-line front end.

Every analysis is exposed as a subcommand over the JSON system file format,
with text or JSON reports and three exit codes:

    0  a verdict was computed (true and false verdicts both count)
    1  indeterminate: a numeric layer gave up or an enumeration cap was hit
    2  invalid input: unreadable file, malformed flags, violated precondition

JSON reports are deterministic for a fixed ``--seed``: rerunning a command
on the same input yields byte-identical output except for the elapsed_ms
field.  The report shapes are documented in docs/report.schema.json.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .boundedness import (
    boundedness_structure,
    cjsr_bounds,
    escape_cycle_length,
    node_irreducible,
)
from .deadbeat import gurvits_constrained
from .errors import (
    BadSubspaceDim,
    CapExceeded,
    CswitchError,
    FieldMismatch,
    NotStronglyConnected,
    ParseError,
    UnknownExampleId,
    ZeroParameter,
)
from .generators import CernyParams, gen_cerny, gen_example, gen_vehicle
from .io import load_system, serialize_system
from .irreducible import DEFAULT_SEED, IrreducibleStatus
from .lift import build_lift, lift_irreducible
from .matrices import Field
from .model import SwitchedSystem, validate_system, with_field
from .reporting import (
    bounds_out,
    deadbeat_out,
    irreducibility_out,
    structure_out,
    validation_out,
)
from .subspaces import DEFAULT_TOL, Subspace

EXIT_OK = 0
EXIT_INDETERMINATE = 1
EXIT_INVALID = 2

_INVALID_INPUT = (
    ParseError,
    FieldMismatch,
    ZeroParameter,
    UnknownExampleId,
    BadSubspaceDim,
    NotStronglyConnected,
    OSError,
    ValueError,
)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cswitch",
        description="decision procedures for constrained switching systems",
    )
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def analysis(name: str, help_: str, *, depth: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="system file (JSON)")
        p.add_argument("--field", choices=["rational", "float"], default=None,
                       help="convert the system's scalar field before analysis")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="zero tolerance for float analyses")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for the randomized irreducibility layers")
        if depth:
            p.add_argument("--max-depth", type=int, default=4,
                           help="path/cycle enumeration depth for CJSR bounds")
            p.add_argument("--cap", type=int, default=200_000,
                           help="upper limit on enumerated paths")
        return p

    analysis("validate", "check a system file and report its shape")
    analysis("deadbeat", "decide dead-beat stability (all long products vanish)")
    analysis("boundedness", "check the boundedness hypotheses and bound the CJSR", depth=True)
    p = analysis("irreducible-node", "irreducibility of one node's cycle products")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--enumerate", action="store_true",
                   help="cross-check via explicit cycle enumeration (exponential)")
    p = analysis("lift", "Kronecker lift of the system")
    p.add_argument("--analyze", action="store_true",
                   help="report irreducibility of the lifted set instead of emitting it")
    p.add_argument("--out", default=None, help="write the lifted system file here")
    analysis("cjsr-bounds", "lower/upper bounds on the CJSR from short products", depth=True)
    p = analysis("escape-length", "shortest cycle moving a subspace off itself")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--subspace", required=True,
                   help='basis vectors as JSON, e.g. "[[1,0]]"; entries int, "p/q" or float')

    g = sub.add_parser("gen", help="write a bundled example system")
    g.add_argument("family", choices=["cerny", "vehicle", "example"])
    g.add_argument("--n", type=int, default=2, help="cerny: matrix dimension")
    g.add_argument("--m", type=int, default=3, help="cerny: node count")
    g.add_argument("--a1", default="1/2", help="vehicle: first parameter (rational)")
    g.add_argument("--a2", default="1/3", help="vehicle: second parameter (rational)")
    g.add_argument("--id", dest="example_id", default=None, help="example: ex1 | ex2 | ex-weakness")
    g.add_argument("--out", default=None, help="output path (stdout when omitted)")
    return top


def _load(args) -> SwitchedSystem:
    system = load_system(args.input)
    if args.field is not None:
        system = with_field(system, Field(args.field))
    return system


def _parse_subspace(text: str, system: SwitchedSystem, tol: float) -> Subspace:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadSubspaceDim(f"--subspace is not valid JSON: {exc}") from exc
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise BadSubspaceDim("--subspace must be a nonempty list of basis vectors")

    def entry(x):
        if system.field is Field.RATIONAL:
            if isinstance(x, bool) or isinstance(x, float):
                raise BadSubspaceDim(f"entry {x!r} is not exact; this system is rational")
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise BadSubspaceDim(f"bad subspace entry {x!r}")
        if isinstance(x, str):
            return float(Fraction(x))
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            return float(x)
        raise BadSubspaceDim(f"bad subspace entry {x!r}")

    vectors = [tuple(entry(x) for x in r) for r in rows]
    if any(len(v) != system.n for v in vectors):
        raise BadSubspaceDim(f"basis vectors must have length {system.n}")
    return Subspace.from_vectors(vectors, system.n, system.field, tol)


def _dispatch(args) -> tuple[dict, int]:
    if args.command == "gen":
        return _run_gen(args)

    system = _load(args)
    report: dict
    code = EXIT_OK

    if args.command == "validate":
        report = validation_out(validate_system(system))
    elif args.command == "deadbeat":
        verdict = gurvits_constrained(system, tol=args.tol)
        report = deadbeat_out(verdict, system)
    elif args.command == "boundedness":
        sr = boundedness_structure(
            system, depth=args.max_depth, cap=args.cap, tol=args.tol, seed=args.seed
        )
        report = structure_out(sr, system)
        if sr.conditions_hold is None:
            code = EXIT_INDETERMINATE
    elif args.command == "irreducible-node":
        if not 0 <= args.node < system.num_nodes:
            raise ValueError(f"node {args.node} is out of range")
        verdict = node_irreducible(
            system, args.node, tol=args.tol, via_enumeration=args.enumerate, seed=args.seed
        )
        report = {"node": args.node, **irreducibility_out(verdict)}
        if verdict.status is IrreducibleStatus.UNKNOWN:
            code = EXIT_INDETERMINATE
    elif args.command == "lift":
        lifted = build_lift(system)
        if args.analyze:
            verdict = lift_irreducible(system, tol=args.tol, seed=args.seed)
            report = {
                "dimension": lifted.dimension,
                "matrix_count": len(lifted.matrices),
                **irreducibility_out(verdict),
            }
            if verdict.status is IrreducibleStatus.UNKNOWN:
                code = EXIT_INDETERMINATE
        else:
            doc = serialize_system(lifted.as_arbitrary_system())
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(doc)
                report = {"written": args.out, "dimension": lifted.dimension}
            else:
                return {"_raw": doc}, EXIT_OK
    elif args.command == "cjsr-bounds":
        bounds = cjsr_bounds(system, depth=args.max_depth, cap=args.cap, tol=args.tol)
        report = bounds_out(bounds, args.max_depth)
    elif args.command == "escape-length":
        if not 0 <= args.node < system.num_nodes:
            raise ValueError(f"node {args.node} is out of range")
        space = _parse_subspace(args.subspace, system, args.tol)
        length = escape_cycle_length(system, args.node, space, tol=args.tol)
        report = {
            "node": args.node,
            "subspace_dim": space.dim,
            "escape_length": length,
            "escapes": length is not None,
        }
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {args.command}")
    return report, code


def _run_gen(args) -> tuple[dict, int]:
    if args.family == "cerny":
        system = gen_cerny(CernyParams(n=args.n, m=args.m))
    elif args.family == "vehicle":
        system = gen_vehicle(Fraction(args.a1), Fraction(args.a2))
    else:
        if args.example_id is None:
            raise UnknownExampleId("gen example needs --id (ex1 | ex2 | ex-weakness)")
        system = gen_example(args.example_id)
    doc = serialize_system(system)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        return {"written": args.out, "name": system.name}, EXIT_OK
    return {"_raw": doc}, EXIT_OK


def _text_lines(value, indent: str = "") -> list[str]:
    lines: list[str] = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_text_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_text_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}- {json.dumps(v)}")
    else:
        lines.append(f"{indent}{json.dumps(value)}")
    return lines


def _emit(report: dict, args, elapsed_ms: float, code: int) -> None:
    if "_raw" in report:
        sys.stdout.write(report["_raw"])
        return
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        envelope = {
            "command": args.command,
            "exit_code": code,
            "report": report,
            "elapsed_ms": round(elapsed_ms, 3),
        }
        print(json.dumps(envelope, indent=2))
    else:
        print("\n".join(_text_lines(report)))


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report, code = _dispatch(args)
    except CapExceeded as exc:
        report = {"error": "cap-exceeded", "message": str(exc), "required": exc.required}
        code = EXIT_INDETERMINATE
    except _INVALID_INPUT as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError) and exc.line is not None:
            report["line"] = exc.line
            report["column"] = exc.column
        code = EXIT_INVALID
    except CswitchError as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_INVALID
    _emit(report, args, (time.perf_counter() - t0) * 1000.0, code)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
