"""Ambiguity reductions: does a satisfiable instance have a second certificate?

A width-3 formula phi over s_1..s_n becomes the width-4 formula
psi = AND_j (!t | s_j) AND_i (t | c_i) over {s_1..s_n, t}: psi is always
satisfiable (t=TRUE with every s_j=TRUE), and it has a second model exactly
when phi is satisfiable. Width-4 clauses are then brought back to width 3
with one forced fresh variable per clause, keeping a bijection between
models. Chaining into the 3SAT compiler turns "is phi satisfiable?" into
"does this anchored graph have a second, incongruent realization?".
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CnfFormula, distinct_literals, enumerate_models, evaluate
from .graphs import Realization
from .realize import decide_ambiguous
from .reduce_sat import CompiledSatGraph, ReductionWitness, compile_3sat


@dataclass(frozen=True)
class AmbiguousInstance:
    formula: CnfFormula
    designated: dict  # certificate the ambiguity question is asked against

    def __post_init__(self):
        if not evaluate(self.formula, self.designated):
            raise ValueError("designated certificate does not satisfy the formula")


def ambiguate_3sat(phi: CnfFormula) -> AmbiguousInstance:
    """Width-4 instance that is satisfiable always, twice iff phi is satisfiable.

    The guard variable t gets index n+1; the designated certificate sets t and
    every s_j to TRUE.
    """
    if phi.width > 3:
        raise ValueError("input must have width <= 3")
    n = phi.variable_count
    t = n + 1
    clauses = [(-t, j) for j in range(1, n + 1)]
    clauses += [(t,) + tuple(c) for c in phi.clauses]
    psi = CnfFormula(n + 1, tuple(clauses))
    designated = {j: True for j in range(1, n + 2)}
    return AmbiguousInstance(psi, designated)


def _forced_guard(l3: int, l4: int, assignment: dict) -> bool:
    # unique satisfying value of the fresh variable: TRUE unless l3 = l4 = FALSE
    v3 = assignment[abs(l3)] == (l3 > 0)
    v4 = assignment[abs(l4)] == (l4 > 0)
    return v3 or v4


def desugar_4sat(psi: CnfFormula):
    """Width-4 to width-3 with one fresh forced variable per wide clause.

    A clause l1|l2|l3|l4 becomes (l1|l2|q) (l3|!l4|q) (!l3|l4|q) (!l3|!l4|q)
    (l3|l4|!q); clauses already of width <= 3 pass through unchanged. The
    witness extends a model with the forced q values and projects them away
    on the way back, a bijection between the model sets.
    """
    if psi.width > 4:
        raise ValueError("input must have width <= 4")
    n = psi.variable_count
    wide = []
    clauses = []
    next_q = n
    for clause in psi.clauses:
        lits = distinct_literals(clause)
        if len(lits) < 4:
            clauses.append(tuple(clause))
            continue
        next_q += 1
        q = next_q
        l1, l2, l3, l4 = lits
        wide.append((l3, l4, q))
        clauses += [
            (l1, l2, q),
            (l3, -l4, q),
            (-l3, l4, q),
            (-l3, -l4, q),
            (l3, l4, -q),
        ]
    transformed = CnfFormula(next_q, tuple(clauses))

    def forward(assignment: dict) -> dict:
        extended = dict(assignment)
        for l3, l4, q in wide:
            extended[q] = _forced_guard(l3, l4, assignment)
        return extended

    def backward(assignment: dict) -> dict:
        return {j: assignment[j] for j in range(1, n + 1)}

    return transformed, ReductionWitness(forward, backward)


def check_certificate_bijection(psi: CnfFormula, transformed: CnfFormula,
                                witness: ReductionWitness, guard: int = 12) -> bool:
    """Enumeration check that witness.forward is a model bijection."""
    if transformed.variable_count > guard:
        raise ValueError(f"{transformed.variable_count} variables exceed the guard {guard}")
    source, _ = enumerate_models(psi)
    target, _ = enumerate_models(transformed)
    if len(source) != len(target):
        return False
    images = []
    for model in source:
        image = witness.forward(model)
        if not evaluate(transformed, image):
            return False
        if witness.backward(image) != model:
            return False
        images.append(tuple(sorted(image.items())))
    return len(set(images)) == len(images)


@dataclass(frozen=True)
class AmbiguousPipeline:
    psi: CnfFormula
    desugared: CnfFormula
    compiled: CompiledSatGraph
    designated: Realization
    designated_assignment: dict


def ambiguous_pipeline(phi: CnfFormula) -> AmbiguousPipeline:
    """phi -> guarded width-4 -> width-3 -> anchored graph, plus the designated
    realization; phi is satisfiable iff the graph has a second incongruent
    anchored realization."""
    instance = ambiguate_3sat(phi)
    desugared, sat_witness = desugar_4sat(instance.formula)
    compiled, graph_witness = compile_3sat(desugared)
    designated3 = sat_witness.forward(instance.designated)
    designated = graph_witness.forward(designated3)
    return AmbiguousPipeline(instance.formula, desugared, compiled, designated, designated3)


def pipeline_is_ambiguous(phi: CnfFormula, cap: int = 200000):
    """Run the full chain and the ambiguity decision; returns (bool, witness)."""
    pipe = ambiguous_pipeline(phi)
    return decide_ambiguous(pipe.compiled.graph, pipe.designated, cap=cap)
