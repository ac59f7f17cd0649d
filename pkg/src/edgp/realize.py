"""Exact branch-and-prune (BP) realization search on the line.

Depth-first placement: the root goes to 0 (or to its anchor), every new
vertex branches on x_v = x_u +/- d_uv, and every edge back into the placed
set prunes unless it is realized exactly. With no anchors the root is fixed
at 0 and the first branching sign at +, which picks exactly one
representative per congruence class (1D congruences are x -> +/-x + c).
Anchors break congruence, so anchored searches return raw solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    EXACT,
    Realization,
    WeightedGraph,
    adjacency,
    congruent,
    verify_realization,
)

REALIZABLE = "REALIZABLE"
UNREALIZABLE = "UNREALIZABLE"


@dataclass
class SearchReport:
    status: str
    realizations: list
    nodes_explored: int
    truncated: bool = False

    @property
    def realizable(self) -> bool:
        return self.status == REALIZABLE


def _value(q: Fraction):
    # keep pure-int arithmetic on integer instances; Fractions otherwise
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class _Step:
    vertex: int
    fixed: object            # anchor/root value, or None
    branch: tuple | None     # (u, w) edge generating the +/- candidates
    checks: tuple            # (u, w) edges that must hold exactly
    canonical: bool          # restrict to the + candidate


def placement_plan(g: WeightedGraph) -> list:
    """Deterministic DFS placement order: anchors first, then by vertex id."""
    if g.dimension != 1:
        raise ValueError("BP search is 1-dimensional")
    adj = adjacency(g)
    anchors = {v: _value(pos[0]) for v, pos in g.anchors.items()}
    placed = []
    placed_set = set()
    plan = []

    def earlier_edges(v):
        return tuple((u, _value(w)) for u, w in adj[v] if u in placed_set)

    for v in sorted(anchors):
        plan.append(_Step(v, anchors[v], None, earlier_edges(v), False))
        placed.append(v)
        placed_set.add(v)
    remaining = set(range(1, g.vertex_count + 1)) - placed_set
    pending_canonical = False
    while remaining:
        frontier = [v for v in remaining if any(u in placed_set for u, _ in adj[v])]
        if frontier:
            v = min(frontier)
            edges = earlier_edges(v)
            plan.append(_Step(v, None, edges[0], edges[1:], pending_canonical))
            pending_canonical = False
        else:
            v = min(remaining)  # fresh unanchored component: root at 0
            plan.append(_Step(v, 0, None, (), False))
            pending_canonical = True
        placed.append(v)
        placed_set.add(v)
        remaining.discard(v)
    return plan


class _Search:
    def __init__(self, g: WeightedGraph):
        self.plan = placement_plan(g)
        self.nodes = 0

    def _candidates(self, step: _Step, x: dict) -> list:
        if step.fixed is not None or step.branch is None:
            cands = (step.fixed,)
        else:
            u, w = step.branch
            base = x[u]
            cands = (base + w,) if step.canonical else (base + w, base - w)
        out = []
        for c in cands:
            if all(abs(c - x[u]) == w for u, w in step.checks):
                out.append(c)
        return out

    def solutions(self):
        plan = self.plan
        if not plan:
            return
        x = {}
        last = len(plan) - 1
        stack = [(0, iter(self._candidates(plan[0], x)))]
        while stack:
            i, it = stack[-1]
            v = plan[i].vertex
            advanced = False
            for c in it:
                x[v] = c
                self.nodes += 1
                if i == last:
                    yield dict(x)
                else:
                    stack.append((i + 1, iter(self._candidates(plan[i + 1], x))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                x.pop(v, None)


def _to_realization(sol: dict) -> Realization:
    return Realization(1, {v: (Fraction(val),) for v, val in sol.items()}, EXACT)


def solution_stream(g: WeightedGraph):
    """(search, generator) pair; the search object exposes nodes_explored."""
    search = _Search(g)
    return search, (_to_realization(s) for s in search.solutions())


def bp_solve(g: WeightedGraph) -> SearchReport:
    """First realization found, or UNREALIZABLE after exhausting all branches."""
    search, stream = solution_stream(g)
    for x in stream:
        return SearchReport(REALIZABLE, [x], search.nodes)
    return SearchReport(UNREALIZABLE, [], search.nodes)


def bp_enumerate(g: WeightedGraph, cap: int | None = None) -> SearchReport:
    """All realizations modulo congruence (raw solutions when anchored)."""
    search, stream = solution_stream(g)
    found = []
    truncated = False
    for x in stream:
        if cap is not None and len(found) >= cap:
            truncated = True
            break
        found.append(x)
    status = REALIZABLE if found else UNREALIZABLE
    return SearchReport(status, found, search.nodes, truncated)


def decide_ambiguous(g: WeightedGraph, x: Realization, cap: int = 200000):
    """Is there a realization of g incongruent to x? Returns (bool, witness)."""
    report = verify_realization(g, x)
    if not report.ok:
        raise ValueError("given realization does not verify against the graph")
    _, stream = solution_stream(g)
    for count, y in enumerate(stream):
        if count >= cap:
            raise RuntimeError(f"enumeration cap {cap} exhausted before a decision")
        if not congruent(x, y):
            return True, y
    return False, None


def rational_certificate(g: WeightedGraph, x: Realization) -> Realization:
    """Translated copy of x with all components rational (vertex 1 at 0).

    The exact pipeline only ever produces rational 1D positions; this asserts
    that and normalizes the translation. Anchored inputs are returned as-is.
    """
    if x.dimension != 1 or x.mode != EXACT:
        raise ValueError("rational certificates are defined for exact 1D realizations")
    if not verify_realization(g, x).ok:
        raise ValueError("realization does not verify")
    if g.anchors:
        return x
    return x.translate((-x.scalar(1),))
