"""tablecp: a small table-constraint solving kernel.

Reversible data structures (trail, sparse sets, sparse bit-sets), a
bit-parallel GAC propagator for positive table constraints with an
STR-style baseline and a brute-force reference, a depth-first solver,
a plain-text instance format with generators, and a benchmark harness
producing performance profiles.
"""

from .bench import ProfileCurve, RunRecord, profiles, ratios, run_instance, run_suite
from .bitset import ReversibleSparseBitSet, words_from_indices
from .ct import DYNAMIC, INCREMENTAL, RESET, CompactTable
from .domain import Inconsistency, ReversibleSparseSet, SparseSetDomain, Variable
from .instances import (
    Instance,
    ParseError,
    generate_alldiff_pairs,
    generate_latin,
    generate_pigeonhole,
    generate_random,
    load,
    ne_table,
    parse,
    render,
    save,
)
from .oracle import OracleTable, gac_fixpoint
from .solver import (
    PROPAGATORS,
    SearchResult,
    SearchStats,
    SearchStatus,
    Solver,
    build_solver,
    make_propagator,
)
from .str2 import Str2Table
from .trail import ReversibleInt, ReversibleWord, Trail

__version__ = "0.1.0"

__all__ = [
    "CompactTable",
    "DYNAMIC",
    "INCREMENTAL",
    "Inconsistency",
    "Instance",
    "OracleTable",
    "PROPAGATORS",
    "ParseError",
    "ProfileCurve",
    "RESET",
    "ReversibleInt",
    "ReversibleSparseBitSet",
    "ReversibleSparseSet",
    "ReversibleWord",
    "RunRecord",
    "SearchResult",
    "SearchStats",
    "SearchStatus",
    "Solver",
    "SparseSetDomain",
    "Str2Table",
    "Trail",
    "Variable",
    "build_solver",
    "gac_fixpoint",
    "generate_alldiff_pairs",
    "generate_latin",
    "generate_pigeonhole",
    "generate_random",
    "load",
    "make_propagator",
    "ne_table",
    "parse",
    "profiles",
    "ratios",
    "render",
    "run_instance",
    "run_suite",
    "save",
    "words_from_indices",
]
