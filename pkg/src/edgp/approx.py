"""Approximate realization: band verification, cycle decisions, rounding.

A tolerance-eps realization keeps every realized edge length inside the
multiplicative band [(1-eps)d, (1+eps)d]. For an integer-weighted cycle the
achievable tolerances are governed by the minimum closure gap
min over sign vectors of |sum sigma_v d_v|: a delta-approximate realization
exists iff that gap is at most delta times the cycle length. The rounding
procedure walks edges in DFS order and resets each position to the integer
that restores the exact edge length (floor when the edge overshoots
rightward, ceil when it undershoots, mirrored leftward, copied when exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath

from .graphs import (
    EXACT,
    CycleListing,
    Realization,
    WeightedGraph,
    enumerate_simple_cycles,
    verify_realization,
)
from .realize import placement_plan

CYCLE_GUARD = 24

#: absolute guard for classifying a high-precision position as an integer
INTEGER_GUARD = Fraction(1, 10**12)


def _exact(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        if value == 0:
            return Fraction(0)
        sign, man, exp, _ = value._mpf_
        if man == 0:
            raise ValueError("non-finite coordinate")
        frac = Fraction(int(man)) * Fraction(2) ** int(exp)
        return -frac if sign else frac
    raise TypeError(f"cannot convert {type(value).__name__} exactly")


def verify_approx(g: WeightedGraph, y: Realization, eps):
    """Band check: returns (ok, epsilon_achieved).

    epsilon_achieved is the maximum relative deviation |dist/d - 1| over
    edges, recomputed from scratch; ok means every edge sits inside the
    closed band for the given eps.
    """
    eps = Fraction(eps)
    if not (0 <= eps < 1):
        raise ValueError("eps must be in [0,1)")
    if g.dimension != y.dimension:
        raise ValueError("dimension mismatch")
    for v in range(1, g.vertex_count + 1):
        if v not in y.positions:
            raise ValueError(f"missing position for vertex {v}")
    ok = True
    achieved = Fraction(0) if y.mode == EXACT and g.dimension == 1 else mpmath.mpf(0)
    for u, v, w in g.edges:
        if y.mode == EXACT and g.dimension == 1:
            dist = abs(y.positions[u][0] - y.positions[v][0])
            dev = abs(dist / w - 1)
        else:
            pu, pv = y.positions[u], y.positions[v]
            if y.mode == EXACT:
                pu = tuple(mpmath.mpf(c.numerator) / c.denominator for c in pu)
                pv = tuple(mpmath.mpf(c.numerator) / c.denominator for c in pv)
            dist = mpmath.sqrt(sum((a - b) ** 2 for a, b in zip(pu, pv)))
            wr = mpmath.mpf(w.numerator) / w.denominator
            dev = abs(dist / wr - 1)
        if dev > achieved:
            achieved = dev
        if dev > eps:
            ok = False
    return ok, achieved


@dataclass(frozen=True)
class CycleAnalysis:
    weights: tuple
    total_length: int
    min_closure_gap: int
    delta_threshold: Fraction  # 2 / total length


def analyze_cycle(weights) -> CycleAnalysis:
    """Exhaustive sign-vector analysis of an integer cycle."""
    weights = tuple(int(w) for w in weights)
    if len(weights) < 2:
        raise ValueError("a cycle needs at least two edges")
    if len(weights) > CYCLE_GUARD:
        raise ValueError(f"more than {CYCLE_GUARD} edges")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    total = sum(weights)
    best = total
    # the first sign can be fixed: negating every sign preserves |gap|
    for signs in product((1, -1), repeat=len(weights) - 1):
        gap = abs(weights[0] + sum(s * w for s, w in zip(signs, weights[1:])))
        if gap < best:
            best = gap
    return CycleAnalysis(weights, total, best, Fraction(2, total))


@dataclass(frozen=True)
class CycleDecision:
    realizable: bool
    analysis: CycleAnalysis
    signs: tuple | None = None
    lengths: tuple | None = None
    positions: tuple | None = None


def cycle_approx_decide(weights, delta) -> CycleDecision:
    """delta-approximate realizability of an integer cycle, with a witness.

    YES iff some sign vector closes within delta of the cycle length; the
    witness stretches the lighter side uniformly when that stays inside the
    band (so (8,9) at delta 1/8 places the middle vertex at 9), otherwise it
    distributes the gap proportionally over all edges.
    """
    delta = Fraction(delta)
    analysis = analyze_cycle(weights)
    weights = analysis.weights
    if analysis.min_closure_gap > delta * analysis.total_length:
        return CycleDecision(False, analysis)
    best_signs = None
    best_gap = None
    for signs in product((1, -1), repeat=len(weights)):
        gap = sum(s * w for s, w in zip(signs, weights))
        if best_gap is None or abs(gap) < abs(best_gap):
            best_signs, best_gap = signs, gap
    plus = sum(w for s, w in zip(best_signs, weights) if s > 0)
    minus = sum(w for s, w in zip(best_signs, weights) if s < 0)
    if best_gap == 0:
        lengths = tuple(Fraction(w) for w in weights)
    else:
        light_is_plus = best_gap < 0
        light = plus if light_is_plus else minus
        if light and Fraction(abs(best_gap), light) <= delta:
            factor = 1 + Fraction(abs(best_gap), light)
            lengths = tuple(
                Fraction(w) * factor if (s > 0) == light_is_plus else Fraction(w)
                for s, w in zip(best_signs, weights)
            )
        else:
            shift = Fraction(best_gap, analysis.total_length)
            lengths = tuple(
                Fraction(w) * (1 - s * shift) for s, w in zip(best_signs, weights)
            )
    positions = [Fraction(0)]
    for s, l in zip(best_signs, lengths):
        positions.append(positions[-1] + s * l)
    assert positions[-1] == 0
    return CycleDecision(True, analysis, best_signs, lengths, tuple(positions))


def classify_eps_delta(weights, eps, delta) -> str:
    """(eps, delta)-approximate status: YES, NO, or INDETERMINATE.

    YES when even an eps-approximate realization exists, NO when not even a
    delta-approximate one does; instances whose least feasible tolerance
    falls strictly between eps and delta are surfaced as INDETERMINATE
    rather than decided arbitrarily.
    """
    eps, delta = Fraction(eps), Fraction(delta)
    if not (0 <= eps < delta < 1):
        raise ValueError("need 0 <= eps < delta < 1")
    analysis = analyze_cycle(weights)
    least = Fraction(analysis.min_closure_gap, analysis.total_length)
    if least <= eps:
        return "YES"
    if least > delta:
        return "NO"
    return "INDETERMINATE"


@dataclass(frozen=True)
class RoundingResult:
    realization: Realization
    verified: bool
    cases: tuple            # (u, v, case index 1..6) per processed edge
    integer_resets: tuple   # edges where a floor/ceil target was already integer

    @property
    def condition_holds(self) -> bool:
        return not self.integer_resets


def _snap_integer(value: Fraction):
    nearest = round(value)
    if abs(value - nearest) <= INTEGER_GUARD:
        return nearest
    return None


def round_approximate(g: WeightedGraph, y: Realization, order=None) -> RoundingResult:
    """Edge-by-edge integer rounding of an approximate realization.

    Processes tree edges in the BP placement order (or an explicit list of
    (parent, child) pairs), applying the six direction/length cases; roots
    and anchored vertices copy their given position. When a floor/ceil case
    meets an already-integer target the reset cannot move the point; those
    edges are reported and the outcome is left to exact verification.
    """
    if g.dimension != 1 or y.dimension != 1:
        raise ValueError("rounding is 1-dimensional")
    for _, _, w in g.edges:
        if w.denominator != 1:
            raise ValueError("rounding requires integer edge weights")
    yval = {v: _exact(y.positions[v][0]) for v in y.positions}
    for v in range(1, g.vertex_count + 1):
        if v not in yval:
            raise ValueError(f"missing position for vertex {v}")
    if order is None:
        steps = []
        for step in placement_plan(g):
            parent = step.branch[0] if step.branch is not None else None
            steps.append((parent, step.vertex))
    else:
        wmap = g.weight_map()
        seen = set()
        steps = []
        roots = set(range(1, g.vertex_count + 1))
        for u, v in order:
            if (min(u, v), max(u, v)) not in wmap:
                raise ValueError(f"({u},{v}) is not an edge")
            steps.append((u, v))
            seen.add(v)
            roots.discard(v)
        steps = [(None, r) for r in sorted(roots)] + steps
        if {v for _, v in steps} != set(range(1, g.vertex_count + 1)):
            raise ValueError("order does not cover every vertex exactly once")
    wmap = g.weight_map()
    x = {}
    cases = []
    resets = []
    for parent, v in steps:
        yv = yval[v]
        if parent is None:
            x[v] = yv
            continue
        yu = yval[parent]
        d = wmap[(min(parent, v), max(parent, v))]
        if yv > yu:
            diff = yv - yu
            if diff > d:
                case = 1
            elif diff < d:
                case = 2
            else:
                case = 3
        elif yv < yu:
            diff = yu - yv
            if diff > d:
                case = 4
            elif diff < d:
                case = 5
            else:
                case = 6
        else:
            # coincident endpoints: treat as an undershoot to the right
            case = 2
        if case in (3, 6):
            x[v] = yv
        else:
            snapped = _snap_integer(yv)
            if snapped is not None:
                x[v] = Fraction(snapped)
                resets.append((parent, v))
            elif case in (1, 5):
                x[v] = Fraction(math.floor(yv))
            else:
                x[v] = Fraction(math.ceil(yv))
        cases.append((parent, v, case))
    rounded = Realization(1, {v: (val,) for v, val in x.items()}, EXACT)
    verified = verify_realization(g, rounded).ok
    return RoundingResult(rounded, verified, tuple(cases), tuple(resets))


@dataclass(frozen=True)
class GadgetCycleReport:
    max_cycle_length: Fraction | None
    delta_threshold: Fraction | None   # 2 / max cycle length
    cycle_count: int
    truncated: bool
    cover: tuple
    listing: CycleListing


def analyze_gadget_cycles(g, max_count: int = 100000) -> GadgetCycleReport:
    """Cycle-length survey of a gadget graph, with a small cycle cover.

    Reports the maximum simple-cycle weight-length and the induced tolerance
    threshold 2/length. The cover keeps every maximum-length cycle and then
    greedily adds cycles until each edge lying on some cycle is covered.
    """
    graph = g.graph if hasattr(g, "graph") else g
    listing = enumerate_simple_cycles(graph, max_count)
    if not listing.cycles:
        return GadgetCycleReport(None, None, 0, listing.truncated, (), listing)
    longest = max(listing.lengths)
    cyclic_edges = set()
    edge_sets = []
    for cyc in listing.cycles:
        edges = frozenset(
            (min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])
        )
        edge_sets.append(edges)
        cyclic_edges |= edges
    cover_idx = [i for i, length in enumerate(listing.lengths) if length == longest]
    covered = set().union(*(edge_sets[i] for i in cover_idx))
    while covered != cyclic_edges:
        best = max(
            (i for i in range(len(edge_sets)) if i not in cover_idx),
            key=lambda i: (len(edge_sets[i] - covered), -i),
        )
        if not edge_sets[best] - covered:
            break
        cover_idx.append(best)
        covered |= edge_sets[best]
    cover = tuple(listing.cycles[i] for i in cover_idx)
    return GadgetCycleReport(
        longest, Fraction(2) / longest, len(listing.cycles), listing.truncated, cover, listing,
    )


def closed_cycle_graph(weights) -> WeightedGraph:
    """Anchored-path encoding of a closed cycle: both endpoints pinned at 0."""
    weights = tuple(int(w) for w in weights)
    n = len(weights)
    edges = tuple((v, v + 1, Fraction(weights[v - 1])) for v in range(1, n + 1))
    return WeightedGraph(n + 1, edges, {1: Fraction(0), n + 1: Fraction(0)})


def random_closable_cycle(rng, max_half: int = 8):
    """Random integer cycle weights plus signs that close it exactly."""
    half = rng.randint(1, max_half)
    sides = []
    for _ in range(2):
        parts = rng.randint(1, max(1, min(half, 3)))
        cuts = sorted(rng.sample(range(1, half), parts - 1)) if parts > 1 else []
        bounds = [0] + cuts + [half]
        sides.append([bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1)])
    weights = []
    signs = []
    for sign, side in ((1, sides[0]), (-1, sides[1])):
        for w in side:
            weights.append(w)
            signs.append(sign)
    order = list(range(len(weights)))
    rng.shuffle(order)
    return [weights[i] for i in order], [signs[i] for i in order]


def drifted_cycle_positions(rng, weights, signs, zero_prefix: int = 0):
    """Perturbed positions of an exactly-closable cycle, built to be roundable.

    Interior drifts are strictly increasing dyadic rationals whose running
    total stays in [0, 1) and under the per-edge band, so every rounding case
    lands back on the exact integer realization.
    """
    n = len(weights)
    exact = [Fraction(0)]
    for s, w in zip(signs, weights):
        exact.append(exact[-1] + s * w)
    if exact[-1] != 0:
        raise ValueError("signs do not close the cycle")
    delta = Fraction(1, 9)
    cap = min(Fraction(1), delta * min(weights))
    target = cap * Fraction(rng.randrange(1, 2**12), 2**12)
    interior = n - 1
    drifting = max(0, interior - zero_prefix)
    drifts = [Fraction(0)] * (zero_prefix + 1)
    if drifting:
        picks = sorted(rng.sample(range(1, 2**16), drifting))
        drifts += [target * Fraction(p, 2**16) for p in picks]
    drifts.append(Fraction(0))
    y = [e + d for e, d in zip(exact, drifts)]
    return exact, y
