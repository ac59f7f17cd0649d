"""Weight-expansion and dimension-lifting gadgets with canonical realizations.

T_h gadgets realize only as length-h segments using weights {1,2}; R1/R2 are
3-4-5 rectangle frames that lift weight-{1,2} instances into the plane at
scale 4; clique gadgets force a minimum embedding dimension; rbar gadgets do
the same while staying globally rigid (two uniform simplices in parallel
section planes, joined by a parallel matching).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .graphs import DEFAULT_PRECISION, REAL, Realization, WeightedGraph

_T_WEIGHTS = (3, 4, 5, 8)


@dataclass(frozen=True)
class GadgetTemplate:
    kind: str
    parameter: int | None
    graph: WeightedGraph
    terminals: tuple


def _t_edges(h: int):
    edges = [(1, 3, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 2)]
    for k in range(5, h + 2):
        edges.append((k - 2, k, 2))
        edges.append((k - 1, k, 1))
    return edges


def t_gadget(h: int) -> GadgetTemplate:
    """Length-h segment gadget on weights {1,2}; terminals e1 and e_{h+1}."""
    if h not in _T_WEIGHTS:
        raise ValueError(f"no segment gadget for weight {h}")
    graph = WeightedGraph(h + 1, tuple(_t_edges(h)))
    return GadgetTemplate(f"T{h}", None, graph, (1, h + 1))


_R1_EDGES = ((1, 2, 3), (3, 4, 3), (1, 3, 4), (2, 4, 4), (1, 4, 5), (2, 3, 5))
_R2_EDGES = _R1_EDGES + (
    (5, 6, 3), (3, 5, 4), (4, 6, 4), (3, 6, 5), (4, 5, 5), (1, 5, 8), (2, 6, 8),
)


def r_gadget(kind: int) -> GadgetTemplate:
    """Planar 3-4-5 frames: R1 (terminals at distance 4), R2 (distance 8)."""
    if kind == 1:
        return GadgetTemplate("R1", None, WeightedGraph(4, _R1_EDGES), (1, 3))
    if kind == 2:
        return GadgetTemplate("R2", None, WeightedGraph(6, _R2_EDGES), (1, 5))
    raise ValueError("kind must be 1 or 2")


def clique_gadget(K: int, weight=1) -> GadgetTemplate:
    """Complete graph on K+1 vertices with uniform weight; terminals k1, k2."""
    if K < 2:
        raise ValueError("clique gadgets need K >= 2")
    w = Fraction(weight)
    edges = tuple(
        (u, v, w) for u in range(1, K + 2) for v in range(u + 1, K + 2)
    )
    return GadgetTemplate("clique", K, WeightedGraph(K + 1, edges, dimension=K), (1, 2))


def build_rbar(K: int, kind: int) -> GadgetTemplate:
    """Rigid dimension gadgets: uniform weight-3 K-cliques in parallel layers.

    kind 1: two layers matched by weight-4 edges {i, K+i}, all remaining cross
    pairs weight 5. kind 2: three layers (two overlapping copies) plus weight-8
    edges {i, 2K+i}. Terminals are the weight-4 (resp. weight-8) pair on
    vertex 1.
    """
    if K < 2:
        raise ValueError("rbar gadgets need K >= 2")
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    layers = 2 if kind == 1 else 3
    edges = []
    for layer in range(layers):
        off = layer * K
        edges.extend((off + i, off + j, 3) for i in range(1, K + 1) for j in range(i + 1, K + 1))
    for layer in range(layers - 1):
        off = layer * K
        edges.extend((off + i, off + K + i, 4) for i in range(1, K + 1))
        edges.extend(
            (off + i, off + K + j, 5)
            for i in range(1, K + 1)
            for j in range(1, K + 1)
            if i != j
        )
    if kind == 2:
        edges.extend((i, 2 * K + i, 8) for i in range(1, K + 1))
    graph = WeightedGraph(layers * K, tuple(edges), dimension=K)
    terminal = (1, K + 1) if kind == 1 else (1, 2 * K + 1)
    return GadgetTemplate(f"rbar{kind}", K, graph, terminal)


def _substitute_edges(g: WeightedGraph, replacer):
    """Rebuild g replacing selected edges by gadget copies on fresh vertices.

    `replacer(u, v, w)` returns None to keep the edge, or a GadgetTemplate
    whose terminals are identified with u, v.
    """
    edges = []
    names = dict(g.names)
    next_id = g.vertex_count + 1
    for u, v, w in g.edges:
        template = replacer(u, v, w)
        if template is None:
            edges.append((u, v, w))
            continue
        t_first, t_last = template.terminals
        mapping = {t_first: u, t_last: v}
        for t in range(1, template.graph.vertex_count + 1):
            if t not in mapping:
                mapping[t] = next_id
                names[next_id] = f"{template.kind.lower()}_{u}_{v}_{t}"
                next_id += 1
        for a, b, tw in template.graph.edges:
            edges.append((mapping[a], mapping[b], tw))
    return edges, names, next_id - 1


def expand_weights(g: WeightedGraph, allowed=frozenset({1, 2})) -> WeightedGraph:
    """Replace every edge of weight 3/4/5/8 by its segment gadget.

    The result uses weights in {1,2} only and is 1D-realizable iff g is;
    anchors carry over unchanged.
    """
    if set(allowed) != {1, 2}:
        raise ValueError("only the weight set {1,2} is supported")

    def replacer(u, v, w):
        if w.denominator != 1 or int(w) not in (1, 2, 3, 4, 5, 8):
            raise ValueError(f"edge ({u},{v}) weight {w} outside {{1,2,3,4,5,8}}")
        return None if int(w) in allowed else t_gadget(int(w))

    edges, names, count = _substitute_edges(g, replacer)
    return WeightedGraph(count, tuple(edges), g.anchors, 1, names)


def lift_to_plane(g1: WeightedGraph) -> WeightedGraph:
    """Lift a weight-{1,2} line instance to the plane via R1/R2 frames.

    Weight-1 edges become R1 (terminal distance 4), weight-2 edges R2
    (distance 8): the output is realizable in R^2 iff g1 is realizable on the
    line, with the overall scale multiplied by 4. 1D anchors do not transfer
    and are dropped.
    """

    def replacer(u, v, w):
        if w == 1:
            return r_gadget(1)
        if w == 2:
            return r_gadget(2)
        raise ValueError(f"edge ({u},{v}) weight {w} outside {{1,2}}")

    edges, names, count = _substitute_edges(g1, replacer)
    return WeightedGraph(count, tuple(edges), {}, 2, names)


def lift_rbar(g1: WeightedGraph, K: int) -> WeightedGraph:
    """Lift a weight-{1,2} line instance to R^K with rigid layer gadgets.

    Weight-1 edges become rbar1 (terminal distance 4), weight-2 edges rbar2
    (distance 8); like the planar lift the scale is multiplied by 4, but the
    replacement frames need all K dimensions and stay globally rigid. 1D
    anchors are dropped.
    """
    if K < 2:
        raise ValueError("rbar lift needs K >= 2")
    one, two = build_rbar(K, 1), build_rbar(K, 2)

    def replacer(u, v, w):
        if w == 1:
            return one
        if w == 2:
            return two
        raise ValueError(f"edge ({u},{v}) weight {w} outside {{1,2}}")

    edges, names, count = _substitute_edges(g1, replacer)
    return WeightedGraph(count, tuple(edges), {}, K, names)


def lift_clique(g1: WeightedGraph, K: int, all_edges: bool = False) -> WeightedGraph:
    """Replace the first weight-1 edge (all of them with all_edges) by a clique.

    The K-clique gadget realizes only in R^K and above, so the lifted graph is
    realizable in R^K iff g1 is realizable on the line. Anchors are dropped.
    """
    if K < 2:
        raise ValueError("clique lift needs K >= 2")
    targets = sorted((u, v) for u, v, w in g1.edges if w == 1)
    if not targets:
        raise ValueError("no weight-1 edge to replace")
    chosen = set(targets) if all_edges else {targets[0]}
    template = clique_gadget(K)

    def replacer(u, v, w):
        return template if (u, v) in chosen else None

    edges, names, count = _substitute_edges(g1, replacer)
    return WeightedGraph(count, tuple(edges), {}, K, names)


def _simplex_points(count: int, side, dim: int):
    """Vertices of a regular (count-1)-simplex with the given side in R^dim.

    First point at the origin, second on the first axis; computed from the
    Cholesky factor of the exact Gram matrix.
    """
    if count - 1 > dim:
        raise ValueError("simplex does not fit the requested dimension")
    side2 = mpmath.mpf(Fraction(side).numerator) / Fraction(side).denominator
    side2 = side2 * side2
    m = count - 1
    G = [[side2 if i == j else side2 / 2 for j in range(m)] for i in range(m)]
    L = [[mpmath.mpf(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1):
            s = G[i][j] - mpmath.fsum(L[i][k] * L[j][k] for k in range(j))
            if i == j:
                L[i][i] = mpmath.sqrt(s)
            else:
                L[i][j] = s / L[j][j]
    zero = mpmath.mpf(0)
    points = [tuple([zero] * dim)]
    for i in range(m):
        points.append(tuple(L[i][: i + 1] + [zero] * (dim - i - 1)))
    return points


def _offset(point, axis: int, amount):
    moved = list(point)
    moved[axis] = moved[axis] + amount
    return tuple(moved)


def realize_gadget(t: GadgetTemplate) -> Realization:
    """Canonical high-precision realization of a gadget template.

    Cliques realize as regular simplices; rbar gadgets as simplex layers
    offset by 4 (and 8) along the last axis, so every weight-4 segment is
    parallel and cross distances come out as sqrt(9+16)=5.
    """
    with mpmath.workprec(DEFAULT_PRECISION):
        if t.kind.startswith("T"):
            h = int(t.kind[1:])
            pos = {v: (mpmath.mpf(v - 1),) for v in range(1, h + 2)}
            return Realization(1, pos, REAL, DEFAULT_PRECISION)
        if t.kind in ("R1", "R2"):
            K, layers = 2, (2 if t.kind == "R1" else 3)
        elif t.kind.startswith("rbar"):
            K, layers = t.parameter, (2 if t.kind == "rbar1" else 3)
        elif t.kind == "clique":
            K = t.parameter
            w = t.graph.edges[0][2]
            points = _simplex_points(K + 1, w, K)
            pos = {v: points[v - 1] for v in range(1, K + 2)}
            return Realization(K, pos, REAL, DEFAULT_PRECISION)
        else:
            raise ValueError(f"no canonical realization for kind {t.kind!r}")
        base = _simplex_points(K, 3, K)
        pos = {}
        for layer in range(layers):
            for i in range(1, K + 1):
                pos[layer * K + i] = _offset(base[i - 1], K - 1, 4 * layer)
        return Realization(K, pos, REAL, DEFAULT_PRECISION)


def minimal_embedding_dimension(g: WeightedGraph):
    """Least K admitting a realization of a complete graph, or None.

    Exact: the Gram matrix centered at vertex 1 has G_ij =
    (d_1i^2 + d_1j^2 - d_ij^2)/2; the answer is its rank when it is positive
    semidefinite (fraction-free symmetric elimination) and None otherwise.
    """
    if not g.is_complete():
        raise ValueError("embedding dimension is defined for complete graphs")
    n = g.vertex_count
    wmap = {pair: w * w for pair, w in g.weight_map().items()}

    def d2(u, v):
        if u == v:
            return Fraction(0)
        return wmap[(min(u, v), max(u, v))]

    m = n - 1
    G = [
        [(d2(1, i + 2) + d2(1, j + 2) - d2(i + 2, j + 2)) / 2 for j in range(m)]
        for i in range(m)
    ]
    active = list(range(m))
    rank = 0
    while active:
        pivot = next((i for i in active if G[i][i] > 0), None)
        if pivot is None:
            if any(G[i][i] < 0 for i in active):
                return None
            if any(G[i][j] != 0 for i in active for j in active):
                return None
            break
        rank += 1
        piv = G[pivot][pivot]
        rest = [i for i in active if i != pivot]
        for i in rest:
            f = G[i][pivot] / piv
            for j in rest:
                G[i][j] -= f * G[pivot][j]
        active = rest
    return rank


def complete_graph_from_realization(x: Realization, tolerance=Fraction(1, 10**6)) -> WeightedGraph:
    """Complete graph over x's vertices weighted by realized distances.

    Distances are snapped to nearby rationals (small denominators) so the
    result stays exact; raises if a distance is not recognizably rational.
    """
    verts = sorted(x.vertices())
    edges = []
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            d = mpmath.sqrt(sum((a - b) ** 2 for a, b in zip(x.positions[u], x.positions[v])))
            snapped = _snap_rational(d, tolerance)
            if snapped is None:
                raise ValueError(f"distance {u}-{v} is not recognizably rational")
            edges.append((u, v, snapped))
    index = {v: i + 1 for i, v in enumerate(verts)}
    return WeightedGraph(len(verts), tuple((index[u], index[v], w) for u, v, w in edges))


def _snap_rational(value, tolerance, max_den: int = 10**6):
    frac = Fraction(str(value)).limit_denominator(max_den)
    approx = mpmath.mpf(frac.numerator) / frac.denominator
    tol = mpmath.mpf(tolerance.numerator) / tolerance.denominator
    if abs(approx - value) <= tol * max(1, abs(value)):
        return frac
    return None


def rotate_about_first_axis(x: Realization, angle, vertices=None) -> Realization:
    """Rotate (a subset of) a realization in the plane of axes 2 and 3."""
    if x.dimension < 3:
        raise ValueError("need at least 3 dimensions for an axis rotation")
    chosen = x.vertices() if vertices is None else set(vertices)
    c, s = mpmath.cos(angle), mpmath.sin(angle)
    pos = {}
    for v, coords in x.positions.items():
        if v in chosen:
            y, z = coords[1], coords[2]
            coords = coords[:1] + (c * y - s * z, s * y + c * z) + coords[3:]
        pos[v] = coords
    return Realization(x.dimension, pos, REAL, x.precision_bits)


def clique_flexibility_demo(K: int, angle=None):
    """Two verified but incongruent realizations of a twice-lifted path.

    A 2-edge unit path is lifted with one clique gadget per edge; rotating one
    gadget about the shared axis preserves every edge length but changes
    gadget-to-gadget distances, exhibiting a flexible framework. Needs K >= 3
    (no spare rotation axis otherwise).
    """
    if K < 3:
        raise ValueError("flexibility needs K >= 3")
    if angle is None:
        angle = mpmath.pi / 2
    path = WeightedGraph(3, ((1, 2, 1), (2, 3, 1)))
    lifted = lift_clique(path, K, all_edges=True)
    with mpmath.workprec(DEFAULT_PRECISION):
        points = _simplex_points(K + 1, 1, K)
        pos = {
            1: points[0],
            2: points[1],
            3: _offset(points[1], 0, 1),
        }
        extras_first = range(4, 4 + (K - 1))
        extras_second = range(4 + (K - 1), 4 + 2 * (K - 1))
        for t, v in enumerate(extras_first, start=2):
            pos[v] = points[t]
        for t, v in enumerate(extras_second, start=2):
            pos[v] = _offset(points[t], 0, 1)
        base = Realization(K, pos, REAL, DEFAULT_PRECISION)
        turned = rotate_about_first_axis(base, angle, vertices=set(extras_second))
    return lifted, base, turned
