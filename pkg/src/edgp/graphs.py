"""Exact-rational weighted graphs and their realizations on the line and in R^K.

All K=1 arithmetic is exact (fractions.Fraction); K>1 coordinates may instead
be high-precision mpmath floats, tagged by the realization's mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath

EXACT = "exact"
REAL = "real"

#: minimum significand precision (bits) for real-mode coordinates
DEFAULT_PRECISION = 128


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _coord_tuple(value, dimension: int, exact: bool):
    if not isinstance(value, (tuple, list)):
        value = (value,)
    if len(value) != dimension:
        raise ValueError(f"expected {dimension} coordinates, got {len(value)}")
    if exact:
        return tuple(_as_fraction(c) for c in value)
    return tuple(mpmath.mpf(c) if not isinstance(c, mpmath.mpf) else c for c in value)


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with positive rational edge weights.

    Vertex ids are dense 1..vertex_count; human-readable labels live in the
    side map `names`. `anchors` pins vertices to prescribed positions.
    """

    vertex_count: int
    edges: tuple = ()
    anchors: Mapping = field(default_factory=dict)
    dimension: int = 1
    names: Mapping = field(default_factory=dict)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("vertex_count must be positive")
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        seen = set()
        norm = []
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) outside 1..{n}")
            if u > v:
                u, v = v, u
            w = _as_fraction(w)
            if w <= 0:
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, w))
        object.__setattr__(self, "edges", tuple(norm))
        anchors = {}
        for v, pos in dict(self.anchors).items():
            if not (1 <= v <= n):
                raise ValueError(f"anchor on unknown vertex {v}")
            anchors[v] = _coord_tuple(pos, self.dimension, exact=True)
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "names", dict(self.names))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> Fraction:
        if u > v:
            u, v = v, u
        for a, b, w in self.edges:
            if (a, b) == (u, v):
                return w
        raise KeyError(f"no edge ({u},{v})")

    def weight_map(self) -> dict:
        return {(u, v): w for u, v, w in self.edges}

    def is_complete(self) -> bool:
        return self.edge_count == self.vertex_count * (self.vertex_count - 1) // 2


def adjacency(g: WeightedGraph) -> dict:
    """Vertex -> sorted list of (neighbor, weight)."""
    adj = {v: [] for v in range(1, g.vertex_count + 1)}
    for u, v, w in g.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    for v in adj:
        adj[v].sort()
    return adj


def connected_components(g: WeightedGraph) -> list:
    adj = adjacency(g)
    seen = set()
    comps = []
    for s in range(1, g.vertex_count + 1):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u, _ in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class Realization:
    """Map from vertex ids to K-vectors, exact-rational or high-precision real."""

    dimension: int
    positions: Mapping
    mode: str = EXACT
    precision_bits: int = 0

    def __post_init__(self):
        if self.mode not in (EXACT, REAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        exact = self.mode == EXACT
        pos = {}
        for v, coords in dict(self.positions).items():
            pos[v] = _coord_tuple(coords, self.dimension, exact=exact)
        object.__setattr__(self, "positions", pos)
        if self.mode == REAL and self.precision_bits == 0:
            object.__setattr__(self, "precision_bits", DEFAULT_PRECISION)

    @classmethod
    def line(cls, values: Sequence, start: int = 1) -> "Realization":
        """1D exact realization from a list of positions for vertices start.."""
        return cls(1, {start + i: (v,) for i, v in enumerate(values)})

    def scalar(self, v: int) -> Fraction:
        if self.dimension != 1:
            raise ValueError("scalar() requires a 1D realization")
        return self.positions[v][0]

    def vertices(self):
        return set(self.positions)

    def translate(self, offset) -> "Realization":
        off = _coord_tuple(offset, self.dimension, exact=self.mode == EXACT)
        moved = {
            v: tuple(c + o for c, o in zip(coords, off))
            for v, coords in self.positions.items()
        }
        return Realization(self.dimension, moved, self.mode, self.precision_bits)

    def reflect(self) -> "Realization":
        return Realization(
            self.dimension,
            {v: tuple(-c for c in coords) for v, coords in self.positions.items()},
            self.mode,
            self.precision_bits,
        )


@dataclass(frozen=True)
class EdgeResidual:
    u: int
    v: int
    weight: Fraction
    deviation: object  # |dist - w| in exact K=1, |dist^2 - w^2| in exact K>1, relative in real mode


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple = ()
    anchor_violations: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _sq_dist_exact(p, q) -> Fraction:
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def _dist_real(p, q):
    return mpmath.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))


def verify_realization(g: WeightedGraph, x: Realization, tolerance=Fraction(0)) -> VerificationReport:
    """Check that every edge is realized at its weight.

    Exact mode compares squared distances exactly (tolerance ignored); real
    mode accepts a relative deviation of the distance up to `tolerance`.
    Anchored vertices must sit at their prescribed positions.
    """
    if g.dimension != x.dimension:
        raise ValueError(f"dimension mismatch: graph {g.dimension}, realization {x.dimension}")
    for v in range(1, g.vertex_count + 1):
        if v not in x.positions:
            raise ValueError(f"missing position for vertex {v}")
    violations = []
    anchor_violations = []
    if x.mode == EXACT:
        for u, v, w in g.edges:
            if g.dimension == 1:
                dist = abs(x.positions[u][0] - x.positions[v][0])
                if dist != w:
                    violations.append(EdgeResidual(u, v, w, abs(dist - w)))
            else:
                d2 = _sq_dist_exact(x.positions[u], x.positions[v])
                if d2 != w * w:
                    violations.append(EdgeResidual(u, v, w, abs(d2 - w * w)))
        for v, pos in g.anchors.items():
            if x.positions[v] != pos:
                anchor_violations.append(v)
    else:
        tol = mpmath.mpf(tolerance.numerator) / tolerance.denominator if isinstance(tolerance, Fraction) else mpmath.mpf(tolerance)
        for u, v, w in g.edges:
            dist = _dist_real(x.positions[u], x.positions[v])
            wr = mpmath.mpf(w.numerator) / w.denominator
            dev = abs(dist - wr) / wr
            if dev > tol:
                violations.append(EdgeResidual(u, v, w, dev))
        for v, pos in g.anchors.items():
            for c, a in zip(x.positions[v], pos):
                ar = mpmath.mpf(a.numerator) / a.denominator
                if abs(c - ar) > tol * max(1, abs(ar)):
                    anchor_violations.append(v)
                    break
    ok = not violations and not anchor_violations
    return VerificationReport(ok, tuple(violations), tuple(anchor_violations))


def congruent(x: Realization, y: Realization, tolerance=Fraction(1, 10**9)) -> bool:
    """True iff all pairwise distances agree (exactly in exact mode).

    Congruences (translations, rotations, reflections) preserve every pairwise
    distance, and on a complete vertex set the converse holds, so comparing
    distance matrices decides congruence in rational arithmetic.
    """
    if x.vertices() != y.vertices():
        raise ValueError("realizations cover different vertex sets")
    if x.dimension != y.dimension:
        raise ValueError("dimension mismatch")
    verts = sorted(x.vertices())
    if x.mode == EXACT and y.mode == EXACT:
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                if _sq_dist_exact(x.positions[u], x.positions[v]) != _sq_dist_exact(y.positions[u], y.positions[v]):
                    return False
        return True
    if x.dimension == 1:
        raise ValueError("1D congruence comparison requires exact mode")
    tol = mpmath.mpf(tolerance.numerator) / tolerance.denominator if isinstance(tolerance, Fraction) else mpmath.mpf(tolerance)

    def coords(r, v):
        if r.mode == EXACT:
            return tuple(mpmath.mpf(c.numerator) / c.denominator for c in r.positions[v])
        return r.positions[v]

    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            du = _dist_real(coords(x, u), coords(x, v))
            dv = _dist_real(coords(y, u), coords(y, v))
            if abs(du - dv) > tol * max(1, du, dv):
                return False
    return True


def scale_to_integer(g: WeightedGraph):
    """Rescale weights to integers with overall gcd 1; returns (graph, scale).

    `scale` maps new weights back to old ones (old = new * scale); anchors are
    rescaled consistently so realizability is preserved.
    """
    denom_lcm = 1
    for _, _, w in g.edges:
        denom_lcm = math.lcm(denom_lcm, w.denominator)
    ints = [int(w * denom_lcm) for _, _, w in g.edges]
    common = 0
    for k in ints:
        common = math.gcd(common, k)
    common = common or 1
    scale = Fraction(common, denom_lcm)
    new_edges = tuple((u, v, w / scale) for u, v, w in g.edges)
    new_anchors = {v: tuple(c / scale for c in pos) for v, pos in g.anchors.items()}
    scaled = WeightedGraph(g.vertex_count, new_edges, new_anchors, g.dimension, g.names)
    return scaled, scale


@dataclass(frozen=True)
class CycleListing:
    cycles: tuple = ()
    lengths: tuple = ()
    truncated: bool = False


def enumerate_simple_cycles(g: WeightedGraph, max_count: int = 100000) -> CycleListing:
    """All simple cycles up to rotation/reflection, with their weight-lengths.

    Each cycle is reported starting at its smallest vertex, second vertex
    smaller than last (fixing direction). Truncation at max_count is flagged.
    """
    wmap = g.weight_map()
    adj = {v: sorted(u for u, _ in nbrs) for v, nbrs in adjacency(g).items()}
    cycles = []
    lengths = []
    truncated = False
    for s in range(1, g.vertex_count + 1):
        if truncated:
            break
        # paths from s through vertices > s only; s is the cycle minimum
        stack = [(s, iter(adj[s]))]
        path = [s]
        on_path = {s}
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u == s and len(path) >= 3:
                    if path[1] < path[-1]:
                        cyc = tuple(path)
                        length = sum(
                            wmap[(min(a, b), max(a, b))]
                            for a, b in zip(cyc, cyc[1:] + cyc[:1])
                        )
                        cycles.append(cyc)
                        lengths.append(length)
                        if len(cycles) >= max_count:
                            truncated = True
                            stack = []
                            advanced = True
                            break
                    continue
                if u <= s or u in on_path:
                    continue
                path.append(u)
                on_path.add(u)
                stack.append((u, iter(adj[u])))
                advanced = True
                break
            if not advanced and stack:
                stack.pop()
                on_path.discard(path.pop())
    return CycleListing(tuple(cycles), tuple(lengths), truncated)
