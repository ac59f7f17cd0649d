"""Independent brute-force oracles used to cross-check the solvers.

These deliberately share no code with the BP search: realizations are
enumerated over spanning-forest sign vectors, partition splits over subsets,
and cycle closability over achievable subset sums.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .graphs import WeightedGraph, adjacency, connected_components


def sign_vector_solutions(g: WeightedGraph):
    """All exact 1D solutions by exhausting spanning-forest sign vectors."""
    if g.dimension != 1:
        raise ValueError("oracle is 1-dimensional")
    adj = adjacency(g)
    anchors = {v: pos[0] for v, pos in g.anchors.items()}
    tree_edges = []
    roots = {}
    parent = {}
    for comp in connected_components(g):
        anchored = sorted(v for v in comp if v in anchors)
        root = anchored[0] if anchored else comp[0]
        roots[root] = anchors.get(root, Fraction(0))
        seen = {root}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for u, w in adj[v]:
                if u not in seen:
                    seen.add(u)
                    parent[u] = (v, w)
                    tree_edges.append(u)
                    queue.append(u)
    wmap = g.weight_map()
    non_tree = [
        (u, v, w)
        for (u, v), w in wmap.items()
        if parent.get(v, (None,))[0] != u and parent.get(u, (None,))[0] != v
    ]
    solutions = []
    for signs in product((1, -1), repeat=len(tree_edges)):
        x = dict(roots)
        for child, s in zip(tree_edges, signs):
            p, w = parent[child]
            x[child] = x[p] + s * w
        if any(abs(x[u] - x[v]) != w for u, v, w in non_tree):
            continue
        if any(x[v] != a for v, a in anchors.items()):
            continue
        solutions.append(x)
    # distinct position maps (sign vectors map to positions injectively, but be safe)
    unique = {tuple(sorted(x.items())): x for x in solutions}
    return list(unique.values())


def congruence_class_count(g: WeightedGraph) -> int:
    """Number of solutions modulo 1D congruence (raw count when anchored)."""
    sols = sign_vector_solutions(g)
    if g.anchors:
        return len(sols)
    if len(connected_components(g)) != 1:
        raise ValueError("congruence quotient oracle requires a connected graph")
    canon = set()
    for x in sols:
        verts = sorted(x)
        t = tuple(x[v] - x[verts[0]] for v in verts)
        r = tuple(x[verts[0]] - x[v] for v in verts)
        canon.add(min(t, r))
    return len(canon)


def partition_has_split(values) -> bool:
    """YES instance of the even-split problem, by subset-sum bitset."""
    total = sum(values)
    if total % 2:
        return False
    reachable = 1
    for a in values:
        reachable |= reachable << a
    return bool((reachable >> (total // 2)) & 1)


def cycle_exactly_closable(weights) -> bool:
    """Can signed integer edge lengths around the cycle sum to zero?"""
    total = sum(weights)
    if total % 2:
        return False
    reachable = 1
    for a in weights:
        reachable |= reachable << a
    return bool((reachable >> (total // 2)) & 1)
