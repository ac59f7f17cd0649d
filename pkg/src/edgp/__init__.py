"""Distance geometry on the line: exact realization search, hardness gadget
compilers, dimension lifts, and approximate-realization analysis."""

from .cnf import CnfFormula, enumerate_models, evaluate, model_count, parse_dimacs
from .graphs import (
    EXACT,
    REAL,
    Realization,
    WeightedGraph,
    congruent,
    enumerate_simple_cycles,
    scale_to_integer,
    verify_realization,
)
from .realize import SearchReport, bp_enumerate, bp_solve, decide_ambiguous, rational_certificate
from .reduce_sat import (
    CompiledSatGraph,
    PartitionInstance,
    ReductionWitness,
    clause_gadget_reachable_sets,
    compile_3sat,
    reduce_partition,
)

__all__ = [
    "CnfFormula", "CompiledSatGraph", "EXACT", "PartitionInstance", "REAL",
    "Realization", "ReductionWitness", "SearchReport", "WeightedGraph",
    "bp_enumerate", "bp_solve", "clause_gadget_reachable_sets", "compile_3sat",
    "congruent", "decide_ambiguous", "enumerate_models", "enumerate_simple_cycles",
    "evaluate", "model_count", "parse_dimacs", "rational_certificate",
    "reduce_partition", "scale_to_integer", "verify_realization",
]

__version__ = "0.1.0"
