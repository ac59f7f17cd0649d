"""Hardness reductions onto line realization: PARTITION and 3SAT compilers.

The 3SAT compiler assembles one literal gadget (anchors A=0, B=2, each
variable's two literal vertices tied at distance 2 and at distance 1 from A)
plus one eight-vertex clause gadget per clause. Translation between
satisfying assignments and anchored realizations runs in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cnf import CnfFormula, distinct_literals
from .graphs import EXACT, Realization, WeightedGraph


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple

    def __post_init__(self):
        values = tuple(int(a) for a in self.values)
        if len(values) < 1 or any(a < 1 for a in values):
            raise ValueError("partition instances need positive integers")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class ReductionWitness:
    forward: Callable
    backward: Callable


def reduce_partition(p: PartitionInstance):
    """Path on n+1 vertices, edge v--v+1 of weight a_v, both ends anchored at 0.

    The equal anchors encode the cycle-closure condition x_{n+1} = x_1; an
    index set I maps to the orientation that walks right on edges in I.
    """
    values = p.values
    n = len(values)
    if n < 2:
        raise ValueError("need at least two values")
    edges = tuple((v, v + 1, Fraction(values[v - 1])) for v in range(1, n + 1))
    graph = WeightedGraph(n + 1, edges, {1: Fraction(0), n + 1: Fraction(0)})

    def forward(index_set) -> Realization:
        chosen = set(index_set)
        pos = [Fraction(0)]
        for v in range(1, n + 1):
            step = values[v - 1] if v in chosen else -values[v - 1]
            pos.append(pos[-1] + step)
        if pos[-1] != 0:
            raise ValueError("index set is not an even split")
        return Realization.line(pos)

    def backward(x: Realization):
        return frozenset(
            v for v in range(1, n + 1) if x.scalar(v + 1) > x.scalar(v)
        )

    return graph, ReductionWitness(forward, backward)


# clause-local edges, by gadget position; literal slots are L1..L3
_CLAUSE_EDGES = (
    ("A", 2, 4),
    ("A", 7, 2),
    ("L1", 2, 3),
    ("L2", 7, 1),
    (2, 4, 2),
    (7, 3, 4),
    ("B", 1, 4),
    (1, 5, 2),
    (5, 6, 1),
    (3, 6, 1),
    (4, 6, 1),
    ("L3", 8, 4),
    (6, 8, 2),
)


def clause_vertex_positions(l1: int, l2: int, l3: int):
    """Gadget-vertex placements consistent with the given literal positions.

    Positions of the two hub vertices are forced (|c2| = 4 with |c2 - l1| = 3,
    |c7| = 2 with |c7 - l2| = 1); the rest is an exhaustive sign expansion.
    Satisfied literal triples admit exactly one placement, (-1,-1,-1) none.
    """
    for l in (l1, l2, l3):
        if l not in (1, -1):
            raise ValueError("literal positions must be +1 or -1")
    c2 = 4 * l1
    c7 = 2 * l2
    placements = []
    for c3 in (c7 + 4, c7 - 4):
        for c4 in (c2 + 2, c2 - 2):
            for c1 in (6, -2):
                for c5 in (c1 + 2, c1 - 2):
                    for c6 in (c5 + 1, c5 - 1):
                        if abs(c6 - c3) != 1 or abs(c6 - c4) != 1:
                            continue
                        for c8 in (l3 + 4, l3 - 4):
                            if abs(c8 - c6) != 2:
                                continue
                            placements.append((c1, c2, c3, c4, c5, c6, c7, c8))
    return placements


def clause_gadget_graph():
    """The eight-vertex clause gadget on its own: anchors, literal slots, hub.

    Vertices: A=1, B=2, L1..L3=3..5, c1..c8=6..13. Every simple cycle has
    weight-length at most 16 (exhaustively checkable), the bound behind the
    1/8 tolerance threshold.
    """
    names = {1: "A", 2: "B", 3: "L1", 4: "L2", 5: "L3"}
    names.update({5 + p: f"c{p}" for p in range(1, 9)})
    slots = {"A": 1, "B": 2, "L1": 3, "L2": 4, "L3": 5}
    edges = [(1, 2, 2), (1, 3, 1), (1, 4, 1), (1, 5, 1)]
    for end_a, end_b, w in _CLAUSE_EDGES:
        u = slots[end_a] if isinstance(end_a, str) else 5 + end_a
        v = slots[end_b] if isinstance(end_b, str) else 5 + end_b
        edges.append((u, v, w))
    return WeightedGraph(13, tuple(edges), {1: Fraction(0), 2: Fraction(2)}, 1, names)


def clause_gadget_reachable_sets(l1: int, l2: int, l3: int):
    """Candidate positions of the hub vertex c6 along the four anchored paths.

    S1 walks A, L2, c7, c3, c6 (c7 forced); S2 walks A, B, c1, c5, c6;
    S3 walks A, L1, c2, c4, c6 (c2 forced); S4 walks A, L3, c8, c6.
    Returns (S1, S2, S3, S4, intersection).
    """
    for l in (l1, l2, l3):
        if l not in (1, -1):
            raise ValueError("literal positions must be +1 or -1")
    s1 = {2 * l2 + s3 * 4 + s4 * 1 for s3 in (1, -1) for s4 in (1, -1)}
    s2 = {2 + a * 4 + b * 2 + c * 1 for a in (1, -1) for b in (1, -1) for c in (1, -1)}
    s3 = {4 * l1 + a * 2 + b * 1 for a in (1, -1) for b in (1, -1)}
    s4 = {l3 + a * 4 + b * 2 for a in (1, -1) for b in (1, -1)}
    return s1, s2, s3, s4, s1 & s2 & s3 & s4


@dataclass(frozen=True)
class CompiledSatGraph:
    graph: WeightedGraph
    literal_vertex: dict      # (variable, polarity True=positive) -> vertex id
    clause_vertices: dict     # (clause index 1-based, position 1..8) -> vertex id
    clause_slots: tuple       # per clause, the three positional literals (signed)
    anchor_a: int = 1
    anchor_b: int = 2


def _positional_literals(clause) -> tuple:
    lits = distinct_literals(clause)
    if len(lits) == 0:
        raise ValueError("empty clause cannot be compiled")
    if len(lits) > 3:
        raise ValueError(f"clause width {len(lits)} exceeds 3")
    while len(lits) < 3:
        lits = lits + (lits[-1],)  # pad by repeating the last literal
    return lits


def compile_3sat(f: CnfFormula):
    """Compile a width-<=3 CNF into an anchored instance on the line.

    Vertex numbering is deterministic: A=1, B=2, literal pairs s_j, !s_j at
    2j+1, 2j+2, then clause vertices in (clause, position) order. Realizations
    with A=0, B=2 exist exactly for satisfying assignments, one per model.
    """
    n = f.variable_count
    a_id, b_id = 1, 2
    literal_vertex = {}
    names = {a_id: "A", b_id: "B"}
    for j in range(1, n + 1):
        pos_id, neg_id = 2 * j + 1, 2 * j + 2
        literal_vertex[(j, True)] = pos_id
        literal_vertex[(j, False)] = neg_id
        names[pos_id] = f"s{j}"
        names[neg_id] = f"ns{j}"
    edges = [(a_id, b_id, 2)]
    for j in range(1, n + 1):
        edges.append((literal_vertex[(j, True)], literal_vertex[(j, False)], 2))
        edges.append((a_id, literal_vertex[(j, True)], 1))
        edges.append((a_id, literal_vertex[(j, False)], 1))
    base = 2 + 2 * n
    clause_vertices = {}
    clause_slots = []
    for i, clause in enumerate(f.clauses, start=1):
        slots = _positional_literals(clause)
        clause_slots.append(slots)
        for p in range(1, 9):
            vid = base + 8 * (i - 1) + p
            clause_vertices[(i, p)] = vid
            names[vid] = f"c_{i}_{p}"
        slot_vertex = {
            f"L{h}": literal_vertex[(abs(l), l > 0)]
            for h, l in enumerate(slots, start=1)
        }
        slot_vertex["A"] = a_id
        slot_vertex["B"] = b_id
        for end_a, end_b, w in _CLAUSE_EDGES:
            u = slot_vertex[end_a] if isinstance(end_a, str) else clause_vertices[(i, end_a)]
            v = slot_vertex[end_b] if isinstance(end_b, str) else clause_vertices[(i, end_b)]
            edges.append((u, v, w))
    graph = WeightedGraph(
        base + 8 * f.clause_count,
        tuple(edges),
        {a_id: Fraction(0), b_id: Fraction(2)},
        1,
        names,
    )
    compiled = CompiledSatGraph(graph, literal_vertex, clause_vertices, tuple(clause_slots))

    def forward(assignment: dict) -> Realization:
        pos = {a_id: Fraction(0), b_id: Fraction(2)}
        for j in range(1, n + 1):
            value = 1 if assignment[j] else -1
            pos[literal_vertex[(j, True)]] = Fraction(value)
            pos[literal_vertex[(j, False)]] = Fraction(-value)
        for i, slots in enumerate(compiled.clause_slots, start=1):
            lits = tuple(
                1 if (assignment[abs(l)] == (l > 0)) else -1 for l in slots
            )
            placements = clause_vertex_positions(*lits)
            if not placements:
                raise ValueError(f"assignment does not satisfy clause {i}")
            if len(placements) > 1:
                raise AssertionError("clause gadget placement is not unique")
            for p, value in enumerate(placements[0], start=1):
                pos[clause_vertices[(i, p)]] = Fraction(value)
        return Realization(1, {v: (c,) for v, c in pos.items()}, EXACT)

    def backward(x: Realization) -> dict:
        return {
            j: x.scalar(literal_vertex[(j, True)]) == 1 for j in range(1, n + 1)
        }

    return compiled, ReductionWitness(forward, backward)
