"""Decision toolkit for constrained switching systems.

A constrained switching system pairs a labeled automaton with one matrix
per label; trajectories multiply matrices along accepted walks.  This
package decides dead-beat stability in polynomial time, checks the
structural hypotheses under which boundedness is decidable, bounds the
constrained joint spectral radius, tests irreducibility of matrix sets,
and builds the Kronecker lift that reduces constrained to arbitrary
switching.
"""

from .boundedness import (
    CjsrBounds,
    StructureReport,
    boundedness_structure,
    cjsr_bounds,
    escape_cycle_length,
    is_linearly_connected,
    linearly_connected_pair,
    mark_irreducible_nodes,
    node_irreducible,
    node_verdicts,
    shortest_nonzero_path_length,
)
from .deadbeat import (
    DeadbeatVerdict,
    GurvitsState,
    deadbeat_bruteforce,
    gurvits_arbitrary,
    gurvits_constrained,
    gurvits_iterates,
    minimal_deadbeat_horizon,
)
from .errors import (
    BadSubspaceDim,
    CapExceeded,
    CswitchError,
    DimensionMismatch,
    DuplicateEdge,
    EmptyGraph,
    FieldMismatch,
    NonConsecutivePath,
    NotStronglyConnected,
    ParseError,
    UnknownExampleId,
    UnknownLabel,
    ZeroParameter,
)
from .generators import CernyParams, gen_cerny, gen_example, gen_vehicle
from .graphs import (
    count_paths,
    enumerate_paths,
    is_unavoidable,
    simple_cycles_through,
    strongly_connected,
)
from .io import load_system, parse_system, save_system, serialize_system
from .irreducible import (
    IrreducibilityVerdict,
    IrreducibleStatus,
    is_irreducible_set,
    seed_closure_scan,
)
from .lift import LiftedSet, build_lift, lift_irreducible
from .linalg import (
    algebra_closure,
    is_invariant,
    path_product,
    span_fixpoint,
    span_fixpoint_all,
    subspace_closure,
)
from .matrices import Field, Matrix
from .model import (
    Edge,
    LabeledGraph,
    MatrixSet,
    Path,
    SwitchedSystem,
    ValidationReport,
    validate_system,
    with_field,
)
from .subspaces import MatrixSpace, Subspace

__version__ = "0.1.0"

__all__ = [
    "BadSubspaceDim",
    "CapExceeded",
    "CernyParams",
    "CjsrBounds",
    "CswitchError",
    "DeadbeatVerdict",
    "DimensionMismatch",
    "DuplicateEdge",
    "Edge",
    "EmptyGraph",
    "Field",
    "FieldMismatch",
    "GurvitsState",
    "IrreducibilityVerdict",
    "IrreducibleStatus",
    "LabeledGraph",
    "LiftedSet",
    "Matrix",
    "MatrixSet",
    "MatrixSpace",
    "NonConsecutivePath",
    "NotStronglyConnected",
    "ParseError",
    "Path",
    "StructureReport",
    "Subspace",
    "SwitchedSystem",
    "UnknownExampleId",
    "UnknownLabel",
    "ValidationReport",
    "ZeroParameter",
    "algebra_closure",
    "boundedness_structure",
    "build_lift",
    "cjsr_bounds",
    "count_paths",
    "deadbeat_bruteforce",
    "enumerate_paths",
    "escape_cycle_length",
    "gen_cerny",
    "gen_example",
    "gen_vehicle",
    "gurvits_arbitrary",
    "gurvits_constrained",
    "gurvits_iterates",
    "is_invariant",
    "is_irreducible_set",
    "is_linearly_connected",
    "is_unavoidable",
    "lift_irreducible",
    "linearly_connected_pair",
    "load_system",
    "mark_irreducible_nodes",
    "minimal_deadbeat_horizon",
    "node_irreducible",
    "node_verdicts",
    "parse_system",
    "path_product",
    "save_system",
    "seed_closure_scan",
    "serialize_system",
    "shortest_nonzero_path_length",
    "simple_cycles_through",
    "span_fixpoint",
    "span_fixpoint_all",
    "strongly_connected",
    "subspace_closure",
    "validate_system",
    "with_field",
]
